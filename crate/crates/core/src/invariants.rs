//! Kronecker structure and Weyr characteristic of a rational pencil.

use std::collections::BTreeMap;

use crate::error::{LabError, Result};
use crate::field::{rat, rat_frac, with_fallback, Field, Rational, Q128};
use crate::matrix::{det_in_place, rank_in_place, rref, RationalMatrix};
use crate::partition::{Partition, StarPartition};
use crate::pencil::{EigenvalueLabel, RationalPencil};
use crate::poly::{coprime_base, Poly};
use crate::weyr::{RegularPart, WeyrCharacteristic};

/// Partial multiplicities per eigenvalue, minimal indices and normal rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerStructure {
    pub rank: usize,
    /// `z(λ)` for every eigenvalue, infinity included.
    pub multiplicities: BTreeMap<EigenvalueLabel, Partition>,
    /// Column minimal indices `c_1 >= ... >= c_{n-ρ}`, zeros included.
    pub column_minimal: Vec<usize>,
    /// Row minimal indices `u_1 >= ... >= u_{m-ρ}`, zeros included.
    pub row_minimal: Vec<usize>,
}

impl KroneckerStructure {
    pub fn weyr(&self) -> WeyrCharacteristic {
        let regular: RegularPart = self
            .multiplicities
            .iter()
            .map(|(l, z)| (l.clone(), z.conjugate()))
            .collect();
        let star = |idx: &[usize]| {
            StarPartition::new(
                idx.len(),
                Partition::from_unsorted(idx.to_vec()).conjugate(),
            )
            .expect("count bounds the conjugate's first part")
        };
        WeyrCharacteristic::new(regular, star(&self.column_minimal), star(&self.row_minimal))
    }
}

/// Diagonal of the Smith form of `H(s)` over `Q[s]`, monic, `d_1 | d_2 | ...`.
pub fn smith_invariant_factors(h: &RationalPencil) -> Vec<Poly> {
    with_fallback(|| smith_generic::<Q128>(h), || smith_generic::<Rational>(h))
}

fn smith_generic<F: Field>(h: &RationalPencil) -> Option<Vec<Poly>> {
    let a = h.a().grid::<F>()?;
    let b = h.b().grid::<F>()?;
    let m: Vec<Vec<Poly<F>>> = a
        .into_iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.into_iter()
                .zip(rb)
                .map(|(x, y)| Poly::linear(x, y))
                .collect()
        })
        .collect();
    smith_diagonal(m)?
        .into_iter()
        .map(|d| d.monic().map(|d| d.to_rational()))
        .collect()
}

/// Smith diagonal by gcd elimination, pivoting on entries of least degree.
fn smith_diagonal<F: Field>(mut m: Vec<Vec<Poly<F>>>) -> Option<Vec<Poly<F>>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_degree_entry(&m, t, |i, j| i >= t && j >= t) else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut leftover = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, _) = m[i][t].div_rem(&m[t][t])?;
                for j in t..cols {
                    if !m[t][j].is_zero() {
                        m[i][j] = m[i][j].sub(&q.mul(&m[t][j])?)?;
                    }
                }
                leftover |= !m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, _) = m[t][j].div_rem(&m[t][t])?;
                for row in m.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let v = row[j].sub(&q.mul(&row[t])?)?;
                        row[j] = v;
                    }
                }
                leftover |= !m[t][j].is_zero();
            }
            if leftover {
                let (pi, pj) =
                    min_degree_entry(&m, t, |i, j| (i == t) != (j == t) && i >= t && j >= t)
                        .expect("a nonzero remainder exists");
                m.swap(t, pi);
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            if m[t][t].degree() == Some(0) {
                break;
            }
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[i][j].is_zero() && !m[i][j].div_rem(&m[t][t])?.1.is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                None => break,
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = m[t][j].add(&m[i][j])?;
                    }
                }
            }
        }
        out.push(m[t][t].clone());
    }
    Some(out)
}

fn min_degree_entry<F: Field>(
    m: &[Vec<Poly<F>>],
    t: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, e) in row.iter().enumerate().skip(t) {
            if !allowed(i, j) {
                continue;
            }
            if let Some(d) = e.degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                    if d == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// `z(λ)`: exponents of `(s - λ)` across the invariant factors, sorted decreasingly.
/// Infinity is handled through the reversal at 0.
pub fn partial_multiplicities(h: &RationalPencil, lambda: &EigenvalueLabel) -> Partition {
    match lambda {
        EigenvalueLabel::Infinity => {
            partial_multiplicities(&h.reversal(), &EigenvalueLabel::int(0))
        }
        EigenvalueLabel::Finite(x) => multiplicities_in(&smith_invariant_factors(h), x),
    }
}

fn multiplicities_in(factors: &[Poly], x: &Rational) -> Partition {
    Partition::from_unsorted(factors.iter().map(|d| d.multiplicity(x)).collect())
}

/// Column and row minimal indices, each sorted decreasingly, zeros included.
pub fn minimal_indices(h: &RationalPencil) -> (Vec<usize>, Vec<usize>) {
    let rho = h.normal_rank();
    (
        column_minimal_indices(h, rho),
        column_minimal_indices(&h.transpose(), rho),
    )
}

/// Column minimal indices from kernel dimensions of the convolution matrices
/// `M_k` (block lower bidiagonal, `A` on the diagonal and `B` below it), which
/// satisfy `dim ker M_k = Σ_{c_i <= k} (k - c_i + 1)`.
fn column_minimal_indices(h: &RationalPencil, rho: usize) -> Vec<usize> {
    let n = h.cols();
    let count = n - rho;
    let mut indices = Vec::with_capacity(count);
    let mut prev_kernel = 0usize;
    let mut prev_at_most = 0usize;
    let mut k = 0usize;
    while indices.len() < count {
        assert!(k <= rho, "minimal indices cannot exceed the normal rank");
        let rank = with_fallback(
            || convolution_rank::<Q128>(h, k),
            || convolution_rank::<Rational>(h, k),
        );
        let kernel = (k + 1) * n - rank;
        let at_most = kernel - prev_kernel;
        for _ in prev_at_most..at_most {
            indices.push(k);
        }
        prev_kernel = kernel;
        prev_at_most = at_most;
        k += 1;
    }
    indices.reverse();
    indices
}

fn convolution_rank<F: Field>(h: &RationalPencil, k: usize) -> Option<usize> {
    let (m, n) = (h.rows(), h.cols());
    let a = h.a().grid::<F>()?;
    let b = h.b().grid::<F>()?;
    let mut grid = vec![vec![F::zero(); (k + 1) * n]; (k + 2) * m];
    for blk in 0..=k {
        for i in 0..m {
            for j in 0..n {
                grid[blk * m + i][blk * n + j] = a[i][j].clone();
                grid[(blk + 1) * m + i][blk * n + j] = b[i][j].clone();
            }
        }
    }
    rank_in_place(grid)
}

/// Full Kronecker structure. Fails when the finite spectrum is not rational.
pub fn kronecker_structure(h: &RationalPencil) -> Result<KroneckerStructure> {
    Ok(structure(h, false)?.0)
}

/// Like [`kronecker_structure`], but eigenvalues outside `Q` are kept: each
/// one gets its own placeholder label `k/1009` outside the rational spectrum.
/// Placeholders carry the right partial multiplicities and are meaningful
/// only up to relabeling. Also returns how many placeholders were used.
pub fn kronecker_structure_relabeled(h: &RationalPencil) -> Result<(KroneckerStructure, usize)> {
    structure(h, true)
}

/// The same structure computed from the Smith forms of `H` and its
/// reversal only. Slower; kept as an independent reference.
pub fn kronecker_structure_by_smith(h: &RationalPencil) -> Result<KroneckerStructure> {
    Ok(smith_structure(h, false)?.0)
}

/// Eigenvalues are the rational roots of one nonvanishing `ρ x ρ` minor,
/// kept when `rank H(λ) < ρ`; the Weyr characteristic at each comes from
/// ranks of constant matrices. When rational eigenvalues do not account for
/// the whole regular degree the Smith form takes over.
///
/// A pencil that is block diagonal up to permutations is split first: the
/// structure of a direct sum is the union of the structures of the blocks.
fn structure(h: &RationalPencil, placeholders: bool) -> Result<(KroneckerStructure, usize)> {
    let blocks = diagonal_blocks(h);
    if blocks.len() <= 1 {
        return connected_structure(h, placeholders);
    }
    let mut total = KroneckerStructure {
        rank: 0,
        multiplicities: BTreeMap::new(),
        column_minimal: vec![0; h.cols() - blocks.iter().map(|b| b.1.len()).sum::<usize>()],
        row_minimal: vec![0; h.rows() - blocks.iter().map(|b| b.0.len()).sum::<usize>()],
    };
    for (rows, cols) in &blocks {
        let (k, u) = connected_structure(&restrict(h, rows, cols), placeholders)?;
        if u > 0 {
            // placeholders of one block know nothing about the others' eigenvalues
            return connected_structure(h, placeholders);
        }
        total.rank += k.rank;
        total.column_minimal.extend(k.column_minimal);
        total.row_minimal.extend(k.row_minimal);
        for (label, z) in k.multiplicities {
            let merged = match total.multiplicities.remove(&label) {
                Some(old) => Partition::from_unsorted([old.parts(), z.parts()].concat()),
                None => z,
            };
            total.multiplicities.insert(label, merged);
        }
    }
    total.column_minimal.sort_unstable_by(|a, b| b.cmp(a));
    total.row_minimal.sort_unstable_by(|a, b| b.cmp(a));
    Ok((total, 0))
}

/// Rows and columns of the connected components of the bipartite graph with
/// an edge wherever `A` or `B` is nonzero. Zero rows and columns are left out.
fn diagonal_blocks(h: &RationalPencil) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (m, n) = (h.rows(), h.cols());
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut linked = vec![false; m + n];
    for i in 0..m {
        for j in 0..n {
            if !h.a().get(i, j).is_zero() || !h.b().get(i, j).is_zero() {
                let (x, y) = (find(&mut parent, i), find(&mut parent, m + j));
                parent[x] = y;
                linked[i] = true;
                linked[m + j] = true;
            }
        }
    }
    let mut blocks: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for v in (0..m + n).filter(|&v| linked[v]) {
        let root = find(&mut parent, v);
        let block = blocks.entry(root).or_default();
        if v < m {
            block.0.push(v);
        } else {
            block.1.push(v - m);
        }
    }
    blocks.into_values().collect()
}

fn restrict(h: &RationalPencil, rows: &[usize], cols: &[usize]) -> RationalPencil {
    let pick = |g: &RationalMatrix| {
        let data = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| g.get(i, j).clone()).collect())
            .collect();
        RationalMatrix::from_rows(rows.len(), cols.len(), data).expect("shape")
    };
    RationalPencil::new(pick(h.a()), pick(h.b())).expect("same shape")
}

fn connected_structure(
    h: &RationalPencil,
    placeholders: bool,
) -> Result<(KroneckerStructure, usize)> {
    let fast = with_fallback(
        || Grids::<Q128>::of(h)?.structure(),
        || Grids::<Rational>::of(h)?.structure(),
    )?;
    match fast {
        Some(k) => Ok((k, 0)),
        None => smith_structure(h, placeholders),
    }
}

/// `(A, B)` as dense grids over one field.
struct Grids<F> {
    m: usize,
    n: usize,
    a: Vec<Vec<F>>,
    b: Vec<Vec<F>>,
}

impl<F: Field> Grids<F> {
    fn of(h: &RationalPencil) -> Option<Self> {
        Some(Grids {
            m: h.rows(),
            n: h.cols(),
            a: h.a().grid()?,
            b: h.b().grid()?,
        })
    }

    fn transpose(&self) -> Self {
        let t = |g: &Vec<Vec<F>>| {
            (0..self.n)
                .map(|j| (0..self.m).map(|i| g[i][j].clone()).collect())
                .collect()
        };
        Grids {
            m: self.n,
            n: self.m,
            a: t(&self.a),
            b: t(&self.b),
        }
    }

    fn reversal(&self) -> Self {
        Grids {
            m: self.m,
            n: self.n,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    fn at(&self, x: &F) -> Option<Vec<Vec<F>>> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(p, q)| p.add(&q.mul(x)?)).collect())
            .collect()
    }

    fn int(x: usize) -> Option<F> {
        F::from_rational(&rat(x as i64))
    }

    /// `H(0), H(1), ...` up to the first point of full rank `ρ`, and `ρ`.
    /// Checking `min(m, n) + 1` points is enough to find the normal rank.
    fn integer_values(&self) -> Option<(Vec<Vec<Vec<F>>>, usize)> {
        let mut values = Vec::new();
        let mut best = 0;
        let mut argbest = 0;
        for x in 0..=self.m.min(self.n) {
            let v = self.at(&Self::int(x)?)?;
            let r = rank_in_place(v.clone())?;
            values.push(v);
            if r > best {
                best = r;
                argbest = x;
            }
            if best == self.m.min(self.n) {
                break;
            }
        }
        values.truncate(argbest + 1);
        Some((values, best))
    }

    /// Block lower bidiagonal, `d` on the diagonal and `low` below, `k + 1`
    /// block columns and `k + 1 + extra` block rows.
    fn banded_rank(&self, d: &[Vec<F>], low: &[Vec<F>], k: usize, extra: usize) -> Option<usize> {
        let (m, n) = (self.m, self.n);
        let mut grid = vec![vec![F::zero(); (k + 1) * n]; (k + 1 + extra) * m];
        for blk in 0..=k {
            for i in 0..m {
                for j in 0..n {
                    grid[blk * m + i][blk * n + j] = d[i][j].clone();
                    if blk < k + extra {
                        grid[(blk + 1) * m + i][blk * n + j] = low[i][j].clone();
                    }
                }
            }
        }
        rank_in_place(grid)
    }

    fn column_minimal(&self, rho: usize) -> Option<Vec<usize>> {
        let count = self.n - rho;
        let mut indices = Vec::with_capacity(count);
        let (mut prev_kernel, mut prev_at_most) = (0, 0);
        let mut k = 0;
        while indices.len() < count {
            assert!(k <= rho, "minimal indices cannot exceed the normal rank");
            let kernel = (k + 1) * self.n - self.banded_rank(&self.a, &self.b, k, 1)?;
            let at_most = kernel - prev_kernel;
            indices.extend(std::iter::repeat_n(k, at_most - prev_at_most));
            prev_kernel = kernel;
            prev_at_most = at_most;
            k += 1;
        }
        indices.reverse();
        Some(indices)
    }

    /// Weyr characteristic at `x`: `w_{k+1}` is the growth of
    /// `dim ker T_k(x) - (k+1)(n-ρ)`, where `T_k(x)` is block lower
    /// bidiagonal with `H(x)` on the diagonal and `B` below it.
    fn local_weyr(&self, x: &F, rho: usize) -> Option<Partition> {
        let hx = self.at(x)?;
        let mut w = Vec::new();
        let mut prev = 0;
        for k in 0..=rho {
            // (k+1) n - rank - (k+1)(n - ρ)
            let d = (k + 1) * rho - self.banded_rank(&hx, &self.b, k, 0)?;
            if d == prev {
                break;
            }
            w.push(d - prev);
            prev = d;
        }
        Some(Partition::new(w).expect("kernel growth is non-increasing"))
    }

    /// A nonzero `ρ x ρ` minor of `H(s)`, interpolated from its values at
    /// `0, 1, ..., ρ`. `values` ends at a point where `H` has rank `ρ`.
    fn eigenvalue_polynomial(&self, mut values: Vec<Vec<Vec<F>>>, rho: usize) -> Option<Poly> {
        let h0 = values.last().expect("at least one value").clone();
        let cols = rref(h0.clone())?.1;
        let rows = rref(
            Grids {
                m: self.m,
                n: self.n,
                a: h0,
                b: Vec::new(),
            }
            .transpose_a(),
        )?
        .1;
        for x in values.len()..=rho {
            values.push(self.at(&Self::int(x)?)?);
        }
        let mut c = Vec::with_capacity(rho + 1);
        for v in values.iter().take(rho + 1) {
            let minor: Vec<Vec<F>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| v[i][j].clone()).collect())
                .collect();
            c.push(det_in_place(minor)?);
        }
        // Newton divided differences on the nodes 0, 1, ..., ρ
        for level in 1..=rho {
            let l = Self::int(level)?;
            for i in (level..=rho).rev() {
                c[i] = c[i].sub(&c[i - 1])?.div(&l)?;
            }
        }
        let mut p = Poly::constant(c[rho].clone());
        for i in (0..rho).rev() {
            p = p
                .mul(&Poly::linear(Self::int(i)?.neg()?, F::one()))?
                .add(&Poly::constant(c[i].clone()))?;
        }
        Some(p.to_rational())
    }

    fn transpose_a(&self) -> Vec<Vec<F>> {
        (0..self.n)
            .map(|j| (0..self.m).map(|i| self.a[i][j].clone()).collect())
            .collect()
    }

    /// `None` inside: the rational eigenvalues fall short of the regular degree.
    fn structure(&self) -> Option<Result<Option<KroneckerStructure>>> {
        let (values, rho) = self.integer_values()?;
        let column_minimal = self.column_minimal(rho)?;
        let row_minimal = self.transpose().column_minimal(rho)?;
        let singular: usize =
            column_minimal.iter().sum::<usize>() + row_minimal.iter().sum::<usize>();
        let Some(needed) = rho.checked_sub(singular) else {
            return Some(Err(LabError::domain(format!(
                "minimal indices sum to {singular}, rank is {rho}"
            ))));
        };
        let mut multiplicities = BTreeMap::new();
        let w_inf = self.reversal().local_weyr(&F::zero(), rho)?;
        let mut found = w_inf.weight();
        if !w_inf.is_zero() {
            multiplicities.insert(EigenvalueLabel::Infinity, w_inf.conjugate());
        }
        if found < needed {
            let Ok(roots) = self.eigenvalue_polynomial(values, rho)?.rational_roots() else {
                return Some(Ok(None));
            };
            for x in roots {
                let w = self.local_weyr(&F::from_rational(&x)?, rho)?;
                if !w.is_zero() {
                    found += w.weight();
                    multiplicities.insert(EigenvalueLabel::Finite(x), w.conjugate());
                }
            }
        }
        Some(match found.cmp(&needed) {
            std::cmp::Ordering::Equal => Ok(Some(KroneckerStructure {
                rank: rho,
                multiplicities,
                column_minimal,
                row_minimal,
            })),
            std::cmp::Ordering::Less => Ok(None),
            std::cmp::Ordering::Greater => Err(LabError::domain(format!(
                "inconsistent structure: regular degree {found} exceeds {needed}"
            ))),
        })
    }
}

fn smith_structure(h: &RationalPencil, placeholders: bool) -> Result<(KroneckerStructure, usize)> {
    let factors = smith_invariant_factors(h);
    let rho = factors.len();
    let mut multiplicities = BTreeMap::new();
    let mut used = 0;
    if let Some(last) = factors.last() {
        let roots = last.rational_roots().map_err(|n| {
            LabError::input(format!(
                "coefficient {n} too large for rational root search"
            ))
        })?;
        let strip = |d: &Poly| roots.iter().fold(d.clone(), |d, x| d.strip_root(x).0);
        for x in &roots {
            multiplicities.insert(
                EigenvalueLabel::Finite(x.clone()),
                multiplicities_in(&factors, x),
            );
        }
        let residual = strip(last);
        if residual.degree().unwrap_or(0) > 0 {
            if !placeholders {
                return Err(LabError::IrrationalSpectrum(residual.to_string()));
            }
            let residuals: Vec<Vec<Poly>> = factors
                .iter()
                .map(|d| strip(d).squarefree_decomposition())
                .collect();
            let all: Vec<Poly> = residuals.iter().flatten().cloned().collect();
            let taken: Vec<EigenvalueLabel> = multiplicities.keys().cloned().collect();
            let mut labels = (1i64..)
                .map(|k| EigenvalueLabel::Finite(rat_frac(k, 1009)))
                .filter(move |l| !taken.contains(l));
            for b in coprime_base(&all) {
                let z = Partition::from_unsorted(
                    residuals
                        .iter()
                        .map(|parts| {
                            parts
                                .iter()
                                .position(|a| a.div_rem(&b).expect("exact").1.is_zero())
                                .map_or(0, |k| k + 1)
                        })
                        .collect(),
                );
                for _ in 0..b.degree().expect("nonconstant") {
                    multiplicities.insert(labels.next().expect("enough labels"), z.clone());
                    used += 1;
                }
            }
        }
    }
    let z_inf = multiplicities_in(&smith_invariant_factors(&h.reversal()), &rat(0));
    if !z_inf.is_zero() {
        multiplicities.insert(EigenvalueLabel::Infinity, z_inf);
    }
    let column_minimal = column_minimal_indices(h, rho);
    let row_minimal = column_minimal_indices(&h.transpose(), rho);
    let total: usize = multiplicities
        .values()
        .map(Partition::weight)
        .sum::<usize>()
        + column_minimal.iter().sum::<usize>()
        + row_minimal.iter().sum::<usize>();
    if total != rho {
        return Err(LabError::domain(format!(
            "inconsistent structure: degrees and minimal indices sum to {total}, rank is {rho}"
        )));
    }
    Ok((
        KroneckerStructure {
            rank: rho,
            multiplicities,
            column_minimal,
            row_minimal,
        },
        used,
    ))
}

pub fn weyr_characteristic(h: &RationalPencil) -> Result<WeyrCharacteristic> {
    Ok(kronecker_structure(h)?.weyr())
}

pub fn strictly_equivalent(g: &RationalPencil, h: &RationalPencil) -> Result<bool> {
    if g.rows() != h.rows() || g.cols() != h.cols() {
        return Err(LabError::input(format!(
            "pencils have different sizes {}x{} and {}x{}",
            g.rows(),
            g.cols(),
            h.rows(),
            h.cols()
        )));
    }
    Ok(weyr_characteristic(g)? == weyr_characteristic(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil(m: usize, n: usize, a: &[i64], b: &[i64]) -> RationalPencil {
        RationalPencil::from_i64(m, n, a, b)
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    fn diag_ss() -> RationalPencil {
        pencil(2, 2, &[0; 4], &[1, 0, 0, 1])
    }

    fn jordan2() -> RationalPencil {
        pencil(2, 2, &[0, 1, 0, 0], &[1, 0, 0, 1])
    }

    fn row_1s() -> RationalPencil {
        pencil(1, 2, &[1, 0], &[0, 1])
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_invariant_factors(&diag_ss()),
            vec![poly(&[0, 1]), poly(&[0, 1])]
        );
        assert_eq!(
            smith_invariant_factors(&jordan2()),
            vec![poly(&[1]), poly(&[0, 0, 1])]
        );
        assert_eq!(smith_invariant_factors(&row_1s()), vec![poly(&[1])]);
        // diag(s, s - 1) is equivalent to diag(1, s(s - 1))
        let h = pencil(2, 2, &[0, 0, 0, -1], &[1, 0, 0, 1]);
        assert_eq!(
            smith_invariant_factors(&h),
            vec![poly(&[1]), poly(&[0, -1, 1])]
        );
    }

    #[test]
    fn multiplicity_examples() {
        let zero = EigenvalueLabel::int(0);
        assert_eq!(
            partial_multiplicities(&diag_ss(), &zero),
            Partition::new(vec![1, 1]).unwrap()
        );
        assert_eq!(
            partial_multiplicities(&jordan2(), &zero),
            Partition::new(vec![2]).unwrap()
        );
        assert_eq!(
            partial_multiplicities(&diag_ss(), &EigenvalueLabel::int(1)),
            Partition::zero()
        );
        let rev = diag_ss().reversal();
        assert_eq!(
            partial_multiplicities(&rev, &EigenvalueLabel::Infinity),
            Partition::new(vec![1, 1]).unwrap()
        );
    }

    #[test]
    fn minimal_index_examples() {
        assert_eq!(minimal_indices(&row_1s()), (vec![1], vec![]));
        assert_eq!(minimal_indices(&diag_ss()), (vec![], vec![]));
        assert_eq!(
            minimal_indices(&RationalPencil::zeros(1, 1)),
            (vec![0], vec![0])
        );
    }

    #[test]
    fn weyr_examples() {
        let w = weyr_characteristic(&diag_ss()).unwrap();
        assert_eq!(
            w.w(&EigenvalueLabel::int(0)),
            Partition::new(vec![2]).unwrap()
        );
        assert_eq!(w.col_star(), &StarPartition::default());
        let w = weyr_characteristic(&row_1s()).unwrap();
        assert!(w.regular().is_empty());
        assert_eq!(
            w.col_star(),
            &StarPartition::from_sequence(&[1, 1]).unwrap()
        );
        let w = weyr_characteristic(&jordan2()).unwrap();
        assert_eq!(
            w.w(&EigenvalueLabel::int(0)),
            Partition::new(vec![1, 1]).unwrap()
        );
    }

    #[test]
    fn irrational_spectrum_is_rejected() {
        // companion pencil of s^2 - 2
        let h = pencil(2, 2, &[0, -2, -1, 0], &[1, 0, 0, 1]);
        assert!(matches!(
            weyr_characteristic(&h),
            Err(LabError::IrrationalSpectrum(_))
        ));
    }

    #[test]
    fn irrational_eigenvalues_get_placeholders() {
        // diag(s^2 - 2 companion, s - 1): blocks [[s, -2], [-1, s]] and [s - 1]
        let h = pencil(
            3,
            3,
            &[0, -2, 0, -1, 0, 0, 0, 0, -1],
            &[1, 0, 0, 0, 1, 0, 0, 0, 1],
        );
        let (k, used) = kronecker_structure_relabeled(&h).unwrap();
        assert_eq!(used, 2);
        assert_eq!(k.multiplicities.len(), 3);
        assert!(k
            .multiplicities
            .values()
            .all(|z| z == &Partition::new(vec![1]).unwrap()));
        assert!(k.multiplicities.contains_key(&EigenvalueLabel::int(1)));
    }

    #[test]
    fn equivalence_requires_same_size() {
        assert!(strictly_equivalent(&diag_ss(), &row_1s()).is_err());
        assert!(!strictly_equivalent(&diag_ss(), &jordan2()).unwrap());
        assert!(strictly_equivalent(&diag_ss(), &diag_ss()).unwrap());
    }
}
