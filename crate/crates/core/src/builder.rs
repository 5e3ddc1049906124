//! Canonical pencils with a prescribed Weyr characteristic, and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{rat, rat_frac, Rational};
use crate::matrix::RationalMatrix;
use crate::partition::{partitions_of, Partition, StarPartition};
use crate::pencil::{EigenvalueLabel, RankOneKind, RationalPencil};
use crate::weyr::{RegularPart, WeyrCharacteristic};

/// One diagonal block of a Kronecker canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KroneckerBlockSpec {
    /// `L_ε`, of size `ε x (ε+1)`.
    ColumnSingular(usize),
    /// `L_η^T`, of size `(η+1) x η`.
    RowSingular(usize),
    /// `sI - J_k(λ)`.
    FiniteJordan(Rational, usize),
    /// `I + sN_k`.
    Infinite(usize),
}

impl KroneckerBlockSpec {
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            KroneckerBlockSpec::ColumnSingular(e) => (e, e + 1),
            KroneckerBlockSpec::RowSingular(e) => (e + 1, e),
            KroneckerBlockSpec::FiniteJordan(_, k) | KroneckerBlockSpec::Infinite(k) => (k, k),
        }
    }

    /// Writes `(A, B)` entries of the block at offset `(r, c)`.
    fn write(&self, a: &mut RationalMatrix, b: &mut RationalMatrix, r: usize, c: usize) {
        match self {
            KroneckerBlockSpec::ColumnSingular(e) => {
                for i in 0..*e {
                    b.set(r + i, c + i, rat(1));
                    a.set(r + i, c + i + 1, rat(1));
                }
            }
            KroneckerBlockSpec::RowSingular(e) => {
                for j in 0..*e {
                    b.set(r + j, c + j, rat(1));
                    a.set(r + j + 1, c + j, rat(1));
                }
            }
            KroneckerBlockSpec::FiniteJordan(lambda, k) => {
                for i in 0..*k {
                    b.set(r + i, c + i, rat(1));
                    a.set(r + i, c + i, -lambda.clone());
                    if i + 1 < *k {
                        a.set(r + i, c + i + 1, rat(-1));
                    }
                }
            }
            KroneckerBlockSpec::Infinite(k) => {
                for i in 0..*k {
                    a.set(r + i, c + i, rat(1));
                    if i + 1 < *k {
                        b.set(r + i, c + i + 1, rat(1));
                    }
                }
            }
        }
    }
}

/// Block list of the canonical form with characteristic `omega`.
pub fn kronecker_blocks(omega: &WeyrCharacteristic) -> Vec<KroneckerBlockSpec> {
    let mut blocks = Vec::new();
    for (lambda, w) in omega.regular() {
        for &k in w.conjugate().parts() {
            blocks.push(match lambda {
                EigenvalueLabel::Finite(x) => KroneckerBlockSpec::FiniteJordan(x.clone(), k),
                EigenvalueLabel::Infinity => KroneckerBlockSpec::Infinite(k),
            });
        }
    }
    blocks.extend(
        minimal_indices_of(omega.col_star())
            .into_iter()
            .map(KroneckerBlockSpec::ColumnSingular),
    );
    blocks.extend(
        minimal_indices_of(omega.row_star())
            .into_iter()
            .map(KroneckerBlockSpec::RowSingular),
    );
    blocks
}

/// `conj(tail)` padded with zeros to `zeroth` entries.
fn minimal_indices_of(star: &StarPartition) -> Vec<usize> {
    let c = star.tail().conjugate();
    (1..=star.zeroth()).map(|i| c.part(i)).collect()
}

/// A `(ρ+s0) x (ρ+r0)` pencil in Kronecker canonical form with characteristic `omega`.
pub fn build_pencil(omega: &WeyrCharacteristic) -> RationalPencil {
    let (m, n) = omega.dims();
    let mut a = RationalMatrix::zeros(m, n);
    let mut b = RationalMatrix::zeros(m, n);
    let (mut r, mut c) = (0, 0);
    for block in kronecker_blocks(omega) {
        block.write(&mut a, &mut b, r, c);
        let (br, bc) = block.shape();
        r += br;
        c += bc;
    }
    debug_assert_eq!((r, c), (m, n));
    RationalPencil::new(a, b).expect("same shape")
}

/// Eigenvalues used by the random generators, in a fixed order.
pub fn eigenvalue_pool() -> Vec<EigenvalueLabel> {
    vec![
        EigenvalueLabel::int(0),
        EigenvalueLabel::int(1),
        EigenvalueLabel::int(-1),
        EigenvalueLabel::int(2),
        EigenvalueLabel::Finite(rat_frac(1, 2)),
        EigenvalueLabel::Infinity,
    ]
}

/// Deterministic generator for a `(seed, stream)` pair; distinct streams are independent.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_weyr(seed: u64, size_budget: usize) -> WeyrCharacteristic {
    random_weyr_with(&mut trial_rng(seed, 0), size_budget)
}

/// Random characteristic of total weight at most `size_budget`, with up to
/// two extra zero minimal indices on each side.
pub fn random_weyr_with<R: Rng>(rng: &mut R, size_budget: usize) -> WeyrCharacteristic {
    let total = rng.gen_range(0..=size_budget);
    // split `total` between the regular part, r and s
    let mut cuts = [rng.gen_range(0..=total), rng.gen_range(0..=total)];
    cuts.sort_unstable();
    let (wr, rr, sr) = (cuts[0], cuts[1] - cuts[0], total - cuts[1]);

    let mut regular = RegularPart::new();
    let mut pool = eigenvalue_pool();
    pool.shuffle(rng);
    let mut left = wr;
    for lambda in pool {
        if left == 0 {
            break;
        }
        let take = if rng.gen_bool(0.5) {
            left
        } else {
            rng.gen_range(1..=left)
        };
        regular.insert(lambda, random_partition(rng, take));
        left -= take;
    }
    let r = random_partition(rng, rr);
    let s = random_partition(rng, sr);
    let r_star = StarPartition::new(r.part(1) + rng.gen_range(0..=2), r).expect("zeroth dominates");
    let s_star = StarPartition::new(s.part(1) + rng.gen_range(0..=2), s).expect("zeroth dominates");
    WeyrCharacteristic::new(regular, r_star, s_star)
}

fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Partition {
    if n <= 12 {
        partitions_of(n)
            .choose(rng)
            .cloned()
            .expect("at least one partition")
    } else {
        // random composition, sorted
        let mut parts = Vec::new();
        let mut left = n;
        while left > 0 {
            let p = rng.gen_range(1..=left);
            parts.push(p);
            left -= p;
        }
        Partition::from_unsorted(parts)
    }
}

fn nonzero_int_vec<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Random rank-one pencil of the requested kind with entries of absolute value at most 2 in each factor.
pub fn random_rank_one_with<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    kind: RankOneKind,
) -> RationalPencil {
    assert!(m >= 1 && n >= 1, "rank-one pencils need m, n >= 1");
    let (len_const, len_var) = match kind {
        RankOneKind::ColumnType => (m, n),
        RankOneKind::RowType => (n, m),
    };
    let fixed = nonzero_int_vec(rng, len_const, 2);
    let var = nonzero_int_vec(rng, 2 * len_var, 2);
    let (v0, v1) = var.split_at(len_var);
    let mut a = RationalMatrix::zeros(m, n);
    let mut b = RationalMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            let (f, x0, x1) = match kind {
                RankOneKind::ColumnType => (fixed[i], v0[j], v1[j]),
                RankOneKind::RowType => (fixed[j], v0[i], v1[i]),
            };
            a.set(i, j, rat(f * x0));
            b.set(i, j, rat(f * x1));
        }
    }
    RationalPencil::new(a, b).expect("same shape")
}

pub fn random_rank_one(seed: u64, m: usize, n: usize, kind: RankOneKind) -> RationalPencil {
    random_rank_one_with(&mut trial_rng(seed, 0), m, n, kind)
}

/// Random `(a + s b) u v^T` with constant `u`, `v`: a rank-one pencil of both kinds.
pub fn random_constant_rank_one_with<R: Rng>(rng: &mut R, m: usize, n: usize) -> RationalPencil {
    assert!(m >= 1 && n >= 1, "rank-one pencils need m, n >= 1");
    let u = nonzero_int_vec(rng, m, 2);
    let v = nonzero_int_vec(rng, n, 2);
    let ab = nonzero_int_vec(rng, 2, 2);
    let mut a = RationalMatrix::zeros(m, n);
    let mut b = RationalMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            a.set(i, j, rat(ab[0] * u[i] * v[j]));
            b.set(i, j, rat(ab[1] * u[i] * v[j]));
        }
    }
    RationalPencil::new(a, b).expect("same shape")
}

/// A rank-one pencil `P` of the given kind with `rank(h + P) = rank(h) - 1`,
/// or `None` if there is none.
///
/// For row type, `P = -h(s) x w^T / (w^T x)` lowers the rank exactly when
/// the constant `w` annihilates the rational kernel of `h`. A minimal basis of
/// that kernel has degree at most `rank(h)` and full rank at every point, so
/// the kernels of `h(x)` at `rank(h) + 1` points of full rank pin `w` down.
pub fn rank_lowering_rank_one_with<R: Rng>(
    rng: &mut R,
    h: &RationalPencil,
    kind: RankOneKind,
) -> Option<RationalPencil> {
    if kind == RankOneKind::ColumnType {
        return rank_lowering_rank_one_with(rng, &h.transpose(), RankOneKind::RowType)
            .map(|p| p.transpose());
    }
    let rho = h.normal_rank();
    if rho == 0 {
        return None;
    }
    let n = h.cols();
    let mut kernel = Vec::new();
    let (mut points, mut x) = (0, 0i64);
    while points <= rho {
        let hx = h.evaluate(&EigenvalueLabel::int(x));
        if hx.rank() == rho {
            kernel.extend(hx.kernel_basis());
            points += 1;
        }
        x += 1;
    }
    let kernel = RationalMatrix::from_rows(kernel.len(), n, kernel).expect("rows of length n");
    let annihilators = kernel.kernel_basis();
    if annihilators.is_empty() {
        return None;
    }
    let mut coeffs: Vec<i64> = (0..annihilators.len())
        .map(|_| rng.gen_range(-2..=2))
        .collect();
    if coeffs.iter().all(|&c| c == 0) {
        coeffs[0] = 1;
    }
    let w: Vec<Rational> = (0..n)
        .map(|j| {
            annihilators
                .iter()
                .zip(&coeffs)
                .map(|(v, &c)| &v[j] * rat(c))
                .sum()
        })
        .collect();
    let dot = |x: &[i64]| -> Rational { w.iter().zip(x).map(|(a, &b)| a * rat(b)).sum() };
    let mut x = nonzero_int_vec(rng, n, 2);
    while dot(&x) == rat(0) {
        x = nonzero_int_vec(rng, n, 2);
    }
    let scale = -(rat(1) / dot(&x));
    let xm = RationalMatrix::from_i64(n, 1, &x);
    let wm = RationalMatrix::from_rows(1, n, vec![w])
        .expect("one row")
        .scale(&scale);
    let a = h.a().mul(&xm).and_then(|u| u.mul(&wm)).expect("shapes fit");
    let b = h.b().mul(&xm).and_then(|u| u.mul(&wm)).expect("shapes fit");
    Some(RationalPencil::new(a, b).expect("same shape"))
}

/// Integer matrix with determinant ±1 from random elementary operations,
/// entries kept within `±bound`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> RationalMatrix {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n == 0 {
        return RationalMatrix::zeros(0, 0);
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            m.swap(i, rng.gen_range(0..n));
            continue;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let new_row: Vec<i64> = (0..n).map(|k| m[i][k] + c * m[j][k]).collect();
        if new_row.iter().all(|x| x.abs() <= bound) {
            m[i] = new_row;
        }
    }
    RationalMatrix::from_i64(n, n, &m.concat())
}

/// `P H Q` for random unimodular `P`, `Q`.
pub fn random_equivalent<R: Rng>(rng: &mut R, h: &RationalPencil) -> RationalPencil {
    let p = random_unimodular(rng, h.rows(), 4);
    let q = random_unimodular(rng, h.cols(), 4);
    h.apply_equivalence(&p, &q)
        .expect("unimodular matrices are invertible")
}
