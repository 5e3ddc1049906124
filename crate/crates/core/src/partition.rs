//! Integer partitions, star partitions and the two majorization relations
//! used by the completion characterizations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// Weakly decreasing sequence of nonnegative integers, trailing zeros stripped.
///
/// Parts are addressed 1-based through [`Partition::part`]; any index past the
/// stored length reads as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(LabError::input(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts decreasingly before storing them.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn zero() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `k` ones, the conjugate of the one-part partition `(k)`.
    pub fn ones(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The `k`-th part, 1-based.
    pub fn part(&self, k: usize) -> usize {
        debug_assert!(k >= 1, "partition parts are 1-based");
        if k == 0 {
            return usize::MAX;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.0.first().copied().unwrap_or(0);
        let mut out = vec![0usize; top];
        for &p in &self.0 {
            for slot in out.iter_mut().take(p) {
                *slot += 1;
            }
        }
        Partition(out)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition((1..=len).map(|k| self.part(k) + other.part(k)).collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = LabError;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        let body: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// A partition carrying a zeroth term, `(p0, p1, p2, ...)` with `p0 >= p1`.
///
/// Indexing through [`StarPartition::get`] is 0-based so that `get(0)` is the
/// zeroth term, matching the usual `r_0, r_1, ...` notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "StarRepr", into = "StarRepr")]
pub struct StarPartition {
    zeroth: usize,
    tail: Partition,
}

#[derive(Serialize, Deserialize)]
struct StarRepr {
    zeroth: usize,
    tail: Partition,
}

impl TryFrom<StarRepr> for StarPartition {
    type Error = LabError;

    fn try_from(r: StarRepr) -> Result<Self> {
        StarPartition::new(r.zeroth, r.tail)
    }
}

impl From<StarPartition> for StarRepr {
    fn from(s: StarPartition) -> Self {
        StarRepr {
            zeroth: s.zeroth,
            tail: s.tail,
        }
    }
}

impl StarPartition {
    pub fn new(zeroth: usize, tail: Partition) -> Result<Self> {
        if !tail.is_zero() && zeroth < tail.part(1) {
            return Err(LabError::input(format!(
                "star partition zeroth term {zeroth} is smaller than the first tail part {}",
                tail.part(1)
            )));
        }
        Ok(StarPartition { zeroth, tail })
    }

    /// Builds from the full sequence `(p0, p1, ...)`.
    pub fn from_sequence(seq: &[usize]) -> Result<Self> {
        match seq.split_first() {
            None => Ok(StarPartition::default()),
            Some((&z, rest)) => StarPartition::new(z, Partition::new(rest.to_vec())?),
        }
    }

    pub fn zeroth(&self) -> usize {
        self.zeroth
    }

    pub fn tail(&self) -> &Partition {
        &self.tail
    }

    /// Term `i`, 0-based; 0 past the support.
    pub fn get(&self, i: usize) -> usize {
        if i == 0 {
            self.zeroth
        } else {
            self.tail.part(i)
        }
    }

    /// Index one past the last nonzero term (0 for the all-zero sequence).
    pub fn support(&self) -> usize {
        if self.zeroth == 0 {
            0
        } else {
            self.tail.len() + 1
        }
    }

    /// The sequence `(p0, p1, ...)` up to its last nonzero term.
    pub fn to_sequence(&self) -> Vec<usize> {
        (0..self.support()).map(|i| self.get(i)).collect()
    }

    pub fn star_weight(&self) -> usize {
        self.zeroth + self.tail.weight()
    }

    /// Adds `extra` termwise starting at index 0.
    pub fn add_from_zero(&self, extra: &Partition) -> StarPartition {
        let len = self.support().max(extra.len());
        let seq: Vec<usize> = (0..len).map(|i| self.get(i) + extra.part(i + 1)).collect();
        StarPartition::from_sequence(&seq)
            .expect("sum of weakly decreasing sequences is weakly decreasing")
    }
}

impl fmt::Display for StarPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut body = vec![self.zeroth.to_string()];
        body.extend(self.tail.parts().iter().map(|p| p.to_string()));
        write!(f, "({})", body.join(","))
    }
}

/// Fixed-length integer sequence. Unlike [`Partition`], trailing zeros count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSeq(pub Vec<i64>);

impl FiniteSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `d ≺′ c`: `d` has one more entry than `c` and, after the first index `h`
/// with `c_h < d_h`, the tail of `c` equals the tail of `d` shifted by one.
pub fn is_1step_majorized(d: &FiniteSeq, c: &FiniteSeq) -> Result<bool> {
    if d.len() != c.len() + 1 {
        return Err(LabError::input(format!(
            "1step-majorization needs len(d) = len(c) + 1, got {} and {}",
            d.len(),
            c.len()
        )));
    }
    if !d.is_weakly_decreasing() || !c.is_weakly_decreasing() {
        return Err(LabError::input(
            "1step-majorization needs weakly decreasing sequences",
        ));
    }
    let p = c.len();
    // 0-based: c[i] < d[i]; the sentinel c[p] = -inf always qualifies.
    let h = (0..p).find(|&i| c.0[i] < d.0[i]).unwrap_or(p);
    Ok((h..p).all(|i| c.0[i] == d.0[i + 1]))
}

/// `s ∠ r`: `r_0 = s_0 + 1` and `r_i = s_i + 1` for every `i <= g`, where
/// `g` is the last index with `r_i > s_i`.
pub fn is_conjugate_majorized(s: &StarPartition, r: &StarPartition) -> bool {
    if r.zeroth != s.zeroth + 1 {
        return false;
    }
    let g = last_excess(r, s).expect("r_0 > s_0");
    (0..=g).all(|i| r.get(i) == s.get(i) + 1)
}

fn last_excess(r: &StarPartition, s: &StarPartition) -> Option<usize> {
    let len = r.support().max(s.support());
    (0..len).rev().find(|&i| r.get(i) > s.get(i))
}

/// The index `g = max{i : r_i > s_i}` for a pair with `s ∠ r`.
pub fn gap_index(r: &StarPartition, s: &StarPartition) -> Result<usize> {
    if !is_conjugate_majorized(s, r) {
        return Err(LabError::input(format!(
            "{s} is not conjugate majorized by {r}"
        )));
    }
    Ok(last_excess(r, s).expect("checked above"))
}

/// Whether some `q ∠ p` has `|q| = |p| - x` (weights of the tails).
pub fn deficit_feasible(p: &StarPartition, x: i64) -> bool {
    if p.zeroth == 0 {
        return false;
    }
    let a = p.tail.conjugate();
    let a1 = a.part(1) as i64;
    let a2 = a.part(2) as i64;
    if p.zeroth == 1 {
        x == a1
    } else {
        x == a1 || x <= a2
    }
}

/// The explicit `q ∠ p` with `|q| = |p| - x` from the constructive proof.
pub fn deficit_construct(p: &StarPartition, x: i64) -> Result<StarPartition> {
    if !deficit_feasible(p, x) {
        return Err(LabError::domain(format!(
            "no q ∠ {p} with weight deficit {x}"
        )));
    }
    let a = p.tail.conjugate();
    let a1 = a.part(1);
    let a2 = a.part(2);
    let seq: Vec<usize> = if x == a1 as i64 {
        (0..=a1).map(|i| p.get(i) - 1).collect()
    } else {
        // x <= a2 < a1
        let fill = (a2 as i64 - x) as usize;
        let mut seq: Vec<usize> = (0..=a2).map(|i| p.get(i) - 1).collect();
        seq.extend((a2 + 1..=a1).map(|i| p.get(i)));
        seq.extend(std::iter::repeat_n(1, fill));
        seq
    };
    let q = StarPartition::from_sequence(&seq)?;
    debug_assert!(is_conjugate_majorized(&q, p));
    debug_assert_eq!(q.tail.weight() as i64, p.tail.weight() as i64 - x);
    Ok(q)
}

/// Exact integer square root, `isqrt(k)^2 <= k < (isqrt(k)+1)^2`.
pub fn isqrt(k: u64) -> u64 {
    if k < 2 {
        return k;
    }
    let mut x = (k as f64).sqrt() as u64;
    while x * x > k {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= k {
        x += 1;
    }
    x
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// All partitions of `n` whose parts are at most `max_part`.
pub fn partitions_bounded(n: usize, max_part: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(n, max_part, &mut cur, &mut out);
    out
}

fn fill_partitions(n: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        cur.push(part);
        fill_partitions(n - part, part, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn star(v: &[usize]) -> StarPartition {
        StarPartition::from_sequence(v).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[10]).conjugate(), Partition::ones(10));
        assert_eq!(p(&[0]).conjugate(), Partition::zero());
    }

    #[test]
    fn weights() {
        assert_eq!(p(&[2, 1]).weight(), 3);
        assert_eq!(star(&[101; 102]).star_weight(), 10302);
        assert_eq!(p(&[0]).weight(), 0);
    }

    #[test]
    fn trailing_zeros_are_insignificant() {
        assert_eq!(p(&[3, 1, 0, 0]), p(&[3, 1]));
        assert_eq!(star(&[2, 0]), star(&[2]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(StarPartition::from_sequence(&[1, 2]).is_err());
    }

    #[test]
    fn one_step_examples() {
        let s = |v: &[i64]| FiniteSeq(v.to_vec());
        assert!(is_1step_majorized(&s(&[1, 0]), &s(&[1])).unwrap());
        assert!(!is_1step_majorized(&s(&[2, 2]), &s(&[1])).unwrap());
        assert!(is_1step_majorized(&s(&[0, 0]), &s(&[0])).unwrap());
        assert!(is_1step_majorized(&s(&[1]), &s(&[1])).is_err());
    }

    #[test]
    fn conjugate_majorization_examples() {
        assert!(is_conjugate_majorized(&star(&[2, 2]), &star(&[3, 1])));
        assert!(!is_conjugate_majorized(&star(&[2]), &star(&[2])));
        assert!(is_conjugate_majorized(&star(&[1]), &star(&[2])));
    }

    #[test]
    fn gap_index_examples() {
        assert_eq!(gap_index(&star(&[2]), &star(&[1])).unwrap(), 0);
        assert_eq!(gap_index(&star(&[3, 2, 1]), &star(&[2, 1, 1])).unwrap(), 1);
        assert_eq!(gap_index(&star(&[1]), &star(&[0])).unwrap(), 0);
        assert!(gap_index(&star(&[2]), &star(&[2])).is_err());
    }

    #[test]
    fn deficit_examples() {
        assert!(deficit_feasible(&star(&[1, 1, 1]), 2));
        assert!(!deficit_feasible(&star(&[1, 1, 1]), 1));
        assert!(deficit_feasible(&star(&[3, 2, 2]), 0));
        assert!(!deficit_feasible(&star(&[0]), 0));
        assert_eq!(deficit_construct(&star(&[1, 1, 1]), 2).unwrap(), star(&[0]));
        assert_eq!(
            deficit_construct(&star(&[3, 2, 2]), 2).unwrap(),
            star(&[2, 1, 1])
        );
        let q = deficit_construct(&star(&[3, 2, 2]), 1).unwrap();
        assert!(is_conjugate_majorized(&q, &star(&[3, 2, 2])));
        assert_eq!(q.tail().weight(), 3);
        assert!(deficit_construct(&star(&[1, 1, 1]), 1).is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[2, 1]).add(&p(&[1, 1])), p(&[3, 2]));
        assert_eq!(p(&[0]).add(&p(&[3])), p(&[3]));
        assert_eq!(p(&[2, 1]).add(&Partition::ones(3)), p(&[3, 2, 1]));
    }

    #[test]
    fn isqrt_small() {
        for k in 0..5000u64 {
            let r = isqrt(k);
            assert!(r * r <= k && k < (r + 1) * (r + 1));
        }
        assert_eq!(isqrt(10302), 101);
        assert_eq!(isqrt(u64::from(u32::MAX)), 65535);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
