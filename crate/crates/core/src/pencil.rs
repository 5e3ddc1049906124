//! Matrix pencils `H(s) = A + sB` over the rationals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{LabError, Result};
use crate::field::{format_rational, parse_rational, rat, Rational};
use crate::matrix::RationalMatrix;

/// A point of the projective line: a finite rational or infinity.
///
/// The derived order puts finite values first (ascending) and infinity last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EigenvalueLabel {
    Finite(Rational),
    Infinity,
}

impl EigenvalueLabel {
    pub fn finite(q: Rational) -> Self {
        EigenvalueLabel::Finite(q)
    }

    pub fn int(n: i64) -> Self {
        EigenvalueLabel::Finite(rat(n))
    }
}

impl fmt::Display for EigenvalueLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenvalueLabel::Finite(q) => write!(f, "{}", format_rational(q)),
            EigenvalueLabel::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for EigenvalueLabel {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" => Ok(EigenvalueLabel::Infinity),
            other => Ok(EigenvalueLabel::Finite(parse_rational(other)?)),
        }
    }
}

impl Serialize for EigenvalueLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EigenvalueLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPencil {
    a: RationalMatrix,
    b: RationalMatrix,
}

impl RationalPencil {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(LabError::input(format!(
                "pencil coefficients have shapes {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(RationalPencil { a, b })
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        RationalPencil {
            a: RationalMatrix::zeros(m, n),
            b: RationalMatrix::zeros(m, n),
        }
    }

    /// Builds from integer coefficient lists in row-major order.
    pub fn from_i64(m: usize, n: usize, a: &[i64], b: &[i64]) -> Self {
        RationalPencil {
            a: RationalMatrix::from_i64(m, n, a),
            b: RationalMatrix::from_i64(m, n, b),
        }
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn evaluate(&self, lambda: &EigenvalueLabel) -> RationalMatrix {
        match lambda {
            EigenvalueLabel::Infinity => self.b.clone(),
            EigenvalueLabel::Finite(x) => self.a.add(&self.b.scale(x)).expect("same shape"),
        }
    }

    /// Rank over the field of rational functions.
    ///
    /// A nonzero `k x k` minor has degree at most `k <= min(m, n)`, so it
    /// cannot vanish at all of the `min(m, n) + 1` points `0, 1, 2, ...`.
    pub fn normal_rank(&self) -> usize {
        let k = self.rows().min(self.cols());
        (0..=k as i64)
            .map(|x| self.evaluate(&EigenvalueLabel::int(x)).rank())
            .max()
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        RationalPencil {
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    /// `B + sA`, which swaps the eigenvalues 0 and infinity.
    pub fn reversal(&self) -> Self {
        RationalPencil {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn add(&self, other: &RationalPencil) -> Result<Self> {
        Ok(RationalPencil {
            a: self.a.add(&other.a)?,
            b: self.b.add(&other.b)?,
        })
    }

    /// `[top; self]`: `top` becomes the first rows.
    pub fn stack_below(&self, top: &RationalPencil) -> Result<Self> {
        Ok(RationalPencil {
            a: top.a.vstack(&self.a)?,
            b: top.b.vstack(&self.b)?,
        })
    }

    /// `P H(s) Q` for invertible constant `P`, `Q`.
    pub fn apply_equivalence(&self, p: &RationalMatrix, q: &RationalMatrix) -> Result<Self> {
        if p.rows() != self.rows() || !p.is_invertible() {
            return Err(LabError::input(
                "left transform is not an invertible matrix of matching size",
            ));
        }
        if q.rows() != self.cols() || !q.is_invertible() {
            return Err(LabError::input(
                "right transform is not an invertible matrix of matching size",
            ));
        }
        Ok(RationalPencil {
            a: p.mul(&self.a)?.mul(q)?,
            b: p.mul(&self.b)?.mul(q)?,
        })
    }
}

/// Which factor of a rank-one pencil is constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RankOneKind {
    /// `u v(s)^T` with `u` a constant column.
    ColumnType,
    /// `u(s) v^T` with `v` a constant row.
    RowType,
}

impl fmt::Display for RankOneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankOneKind::ColumnType => write!(f, "COLUMN_TYPE"),
            RankOneKind::RowType => write!(f, "ROW_TYPE"),
        }
    }
}

/// `P(s) = (x + s y) (a + s b)^T` where exactly one of the two factors is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneDecomposition {
    pub kind: RankOneKind,
    /// Constant and degree-one parts of the left factor (length `m`).
    pub left: (Vec<Rational>, Vec<Rational>),
    /// Constant and degree-one parts of the right factor (length `n`).
    pub right: (Vec<Rational>, Vec<Rational>),
}

impl RankOneDecomposition {
    /// Multiplies the factors back out.
    pub fn reconstruct(&self) -> RationalPencil {
        let (x, y) = &self.left;
        let (a, b) = &self.right;
        let m = x.len();
        let n = a.len();
        let mut p0 = RationalMatrix::zeros(m, n);
        let mut p1 = RationalMatrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                p0.set(i, j, &x[i] * &a[j]);
                // the product of the two degree-one parts is zero by construction
                p1.set(i, j, &x[i] * &b[j] + &y[i] * &a[j]);
            }
        }
        RationalPencil::new(p0, p1).expect("same shape")
    }
}

/// Splits a normal-rank-one pencil into a constant factor and a degree-one factor.
pub fn classify_rank_one(p: &RationalPencil) -> Result<RankOneDecomposition> {
    let rank = p.normal_rank();
    if rank != 1 {
        return Err(LabError::input(format!(
            "perturbation has normal rank {rank}, expected 1"
        )));
    }
    let (m, n) = (p.rows(), p.cols());
    let zero = rat(0);
    let wide = p.a.hstack(&p.b)?;
    if wide.rank() == 1 {
        // [P0 P1] = u [a^T b^T]
        let i0 = (0..m)
            .find(|&i| wide.row(i).iter().any(|x| x != &zero))
            .expect("rank one");
        let j0 = (0..2 * n)
            .find(|&j| wide.get(i0, j) != &zero)
            .expect("nonzero row");
        let u: Vec<Rational> = (0..m).map(|i| wide.get(i, j0).clone()).collect();
        let pivot = u[i0].clone();
        let a: Vec<Rational> = (0..n).map(|j| p.a.get(i0, j) / &pivot).collect();
        let b: Vec<Rational> = (0..n).map(|j| p.b.get(i0, j) / &pivot).collect();
        let d = RankOneDecomposition {
            kind: RankOneKind::ColumnType,
            left: (u, vec![zero.clone(); m]),
            right: (a, b),
        };
        assert_eq!(&d.reconstruct(), p, "column factorization must reconstruct");
        return Ok(d);
    }
    let tall = p.a.vstack(&p.b)?;
    if tall.rank() == 1 {
        // [P0; P1] = [x; y] v^T
        let i0 = (0..2 * m)
            .find(|&i| tall.row(i).iter().any(|x| x != &zero))
            .expect("rank one");
        let j0 = (0..n)
            .find(|&j| tall.get(i0, j) != &zero)
            .expect("nonzero row");
        let v: Vec<Rational> = tall.row(i0).iter().map(|x| x / tall.get(i0, j0)).collect();
        let pivot = v[j0].clone();
        let x: Vec<Rational> = (0..m).map(|i| p.a.get(i, j0) / &pivot).collect();
        let y: Vec<Rational> = (0..m).map(|i| p.b.get(i, j0) / &pivot).collect();
        let d = RankOneDecomposition {
            kind: RankOneKind::RowType,
            left: (x, y),
            right: (v, vec![zero.clone(); n]),
        };
        assert_eq!(&d.reconstruct(), p, "row factorization must reconstruct");
        return Ok(d);
    }
    panic!("a rank-one pencil always has a constant left or right factor");
}

/// Every kind a normal-rank-one pencil has. Pencils `(a + s b) u v^T` with
/// constant `u`, `v` have both.
pub fn rank_one_kinds(p: &RationalPencil) -> Result<Vec<RankOneKind>> {
    let rank = p.normal_rank();
    if rank != 1 {
        return Err(LabError::input(format!(
            "perturbation has normal rank {rank}, expected 1"
        )));
    }
    let mut out = Vec::new();
    if p.a.hstack(&p.b)?.rank() == 1 {
        out.push(RankOneKind::ColumnType);
    }
    if p.a.vstack(&p.b)?.rank() == 1 {
        out.push(RankOneKind::RowType);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct PencilRepr {
    m: usize,
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: Vec<Vec<String>>,
}

fn matrix_to_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

fn matrix_from_strings(m: usize, n: usize, data: &[Vec<String>]) -> Result<RationalMatrix> {
    let rows = data
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| parse_rational(x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(m, n, rows)
}

impl Serialize for RationalPencil {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PencilRepr {
            m: self.rows(),
            n: self.cols(),
            a: matrix_to_strings(&self.a),
            b: matrix_to_strings(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPencil {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PencilRepr::deserialize(d)?;
        let a = matrix_from_strings(r.m, r.n, &r.a).map_err(serde::de::Error::custom)?;
        let b = matrix_from_strings(r.m, r.n, &r.b).map_err(serde::de::Error::custom)?;
        RationalPencil::new(a, b).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil(m: usize, n: usize, a: &[i64], b: &[i64]) -> RationalPencil {
        RationalPencil::from_i64(m, n, a, b)
    }

    #[test]
    fn evaluation() {
        let h = pencil(2, 2, &[1, 0, 0, 0], &[0, 1, 0, 0]);
        assert_eq!(
            h.evaluate(&EigenvalueLabel::int(0)),
            RationalMatrix::from_i64(2, 2, &[1, 0, 0, 0])
        );
        assert_eq!(
            h.evaluate(&EigenvalueLabel::Infinity),
            RationalMatrix::from_i64(2, 2, &[0, 1, 0, 0])
        );
        let d = pencil(2, 2, &[0; 4], &[1, 0, 0, 1]);
        assert_eq!(
            d.evaluate(&EigenvalueLabel::int(2)),
            RationalMatrix::from_i64(2, 2, &[2, 0, 0, 2])
        );
    }

    #[test]
    fn normal_ranks() {
        assert_eq!(pencil(1, 2, &[1, 0], &[0, 1]).normal_rank(), 1);
        assert_eq!(RationalPencil::zeros(3, 2).normal_rank(), 0);
        assert_eq!(pencil(2, 2, &[0, 0, 0, 1], &[1, 0, 0, 0]).normal_rank(), 2);
        // s I - J: singular at every sample except it is not identically singular
        assert_eq!(pencil(2, 2, &[0, -1, 0, 0], &[1, 0, 0, 1]).normal_rank(), 2);
    }

    #[test]
    fn transpose_and_reversal() {
        let h = pencil(1, 2, &[1, 0], &[0, 1]);
        assert_eq!(h.transpose().rows(), 2);
        assert_eq!(h.reversal().reversal(), h);
    }

    #[test]
    fn equivalence_checks_invertibility() {
        let h = pencil(1, 2, &[1, 0], &[0, 1]);
        let id1 = RationalMatrix::identity(1);
        let id2 = RationalMatrix::identity(2);
        assert_eq!(h.apply_equivalence(&id1, &id2).unwrap(), h);
        assert!(h
            .apply_equivalence(&id1, &RationalMatrix::zeros(2, 2))
            .is_err());
        let swap = RationalMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let g = pencil(2, 1, &[1, 0], &[0, 1]);
        assert_eq!(
            g.apply_equivalence(&swap, &id1).unwrap(),
            pencil(2, 1, &[0, 1], &[1, 0])
        );
    }

    #[test]
    fn rank_one_classification() {
        let p = pencil(2, 2, &[1, 0, 0, 0], &[0, 1, 0, 0]);
        let d = classify_rank_one(&p).unwrap();
        assert_eq!(d.kind, RankOneKind::ColumnType);
        assert_eq!(d.left.0, vec![rat(1), rat(0)]);
        assert_eq!(d.right, (vec![rat(1), rat(0)], vec![rat(0), rat(1)]));

        let p = pencil(2, 1, &[1, 0], &[0, 1]);
        let d = classify_rank_one(&p).unwrap();
        assert_eq!(d.kind, RankOneKind::RowType);
        assert_eq!(d.left, (vec![rat(1), rat(0)], vec![rat(0), rat(1)]));
        assert_eq!(d.right.0, vec![rat(1)]);

        let p = pencil(2, 2, &[1, 0, 0, 0], &[0; 4]);
        assert_eq!(classify_rank_one(&p).unwrap().kind, RankOneKind::ColumnType);

        assert!(classify_rank_one(&RationalPencil::zeros(2, 2)).is_err());
        assert!(classify_rank_one(&pencil(2, 2, &[1, 0, 0, 1], &[0; 4])).is_err());
    }

    #[test]
    fn kinds_of_rank_one_pencils() {
        use RankOneKind::*;
        // (1 + s) e1 e1^T has both kinds
        assert_eq!(
            rank_one_kinds(&pencil(2, 2, &[1, 0, 0, 0], &[1, 0, 0, 0])).unwrap(),
            vec![ColumnType, RowType]
        );
        // e1 (1, s)
        assert_eq!(
            rank_one_kinds(&pencil(2, 2, &[1, 0, 0, 0], &[0, 1, 0, 0])).unwrap(),
            vec![ColumnType]
        );
        // (1, s)^T e1^T
        assert_eq!(
            rank_one_kinds(&pencil(2, 2, &[1, 0, 0, 0], &[0, 0, 1, 0])).unwrap(),
            vec![RowType]
        );
        assert!(rank_one_kinds(&RationalPencil::zeros(1, 1)).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut a = RationalMatrix::zeros(1, 2);
        a.set(0, 0, crate::field::rat_frac(-3, 7));
        let h = RationalPencil::new(a, RationalMatrix::from_i64(1, 2, &[0, 5])).unwrap();
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(text, r#"{"m":1,"n":2,"A":[["-3/7","0"]],"B":[["0","5"]]}"#);
        let back: RationalPencil = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let empty = RationalPencil::zeros(0, 3);
        let back: RationalPencil =
            serde_json::from_str(&serde_json::to_string(&empty).unwrap()).unwrap();
        assert_eq!(back, empty);
    }

    #[test]
    fn labels_order_and_parse() {
        let mut v: Vec<EigenvalueLabel> = ["inf", "2", "-1", "1/2", "0"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        v.sort();
        let text: Vec<String> = v.iter().map(|l| l.to_string()).collect();
        assert_eq!(text, vec!["-1", "0", "1/2", "2", "inf"]);
    }
}
