//! Univariate polynomials over a [`Field`], coefficients stored low degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{format_rational, with_fallback, Field, Rational, Q128};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F = Rational> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b s`.
    pub fn linear(a: F, b: F) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Self) -> Option<Self> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Some(Poly::new(out))
    }

    pub fn sub(&self, o: &Self) -> Option<Self> {
        self.add(&o.neg()?)
    }

    pub fn neg(&self) -> Option<Self> {
        Some(Poly {
            coeffs: self.coeffs.iter().map(F::neg).collect::<Option<_>>()?,
        })
    }

    pub fn mul(&self, o: &Self) -> Option<Self> {
        if self.is_zero() || o.is_zero() {
            return Some(Poly::zero());
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b)?)?;
                }
            }
        }
        Some(Poly::new(out))
    }

    pub fn scale(&self, c: &F) -> Option<Self> {
        Some(Poly::new(
            self.coeffs
                .iter()
                .map(|a| a.mul(c))
                .collect::<Option<_>>()?,
        ))
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].div(&lead)?;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dj)?)?;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Some((Poly::new(quot), Poly::new(rem)))
    }

    pub fn monic(&self) -> Option<Self> {
        match self.leading() {
            None => Some(self.clone()),
            Some(l) => self.scale(&F::one().div(l)?),
        }
    }

    pub fn eval(&self, x: &F) -> Option<F> {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Some(acc)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Option<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Option<Self> {
        let mut out = Vec::new();
        let mut k = F::zero();
        for c in self.coeffs.iter() {
            out.push(c.mul(&k)?);
            k = k.add(&F::one())?;
        }
        if !out.is_empty() {
            out.remove(0);
        }
        Some(Poly::new(out))
    }

    /// Quotient and remainder of the division by `s - x`.
    fn deflate(&self, x: &F) -> Option<(Self, F)> {
        let Some(top) = self.coeffs.len().checked_sub(1) else {
            return Some((Poly::zero(), F::zero()));
        };
        let mut quot = vec![F::zero(); top];
        let mut acc = self.coeffs[top].clone();
        for k in (0..top).rev() {
            quot[k] = acc.clone();
            acc = acc.mul(x)?.add(&self.coeffs[k])?;
        }
        Some((Poly::new(quot), acc))
    }

    fn strip_root_in(&self, x: &F) -> Option<(Self, usize)> {
        assert!(!self.is_zero(), "multiplicity in the zero polynomial");
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.deflate(x)?;
            if !r.is_zero() {
                return Some((p, k));
            }
            p = q;
            k += 1;
        }
    }

    fn squarefree_part_in(&self) -> Option<Self> {
        let g = self.gcd(&self.derivative()?)?;
        Some(self.div_rem(&g)?.0)
    }

    pub fn to_rational(&self) -> Poly<Rational> {
        Poly::new(self.coeffs.iter().map(F::to_rational).collect())
    }
}

impl Poly<Rational> {
    fn to_q128(&self) -> Option<Poly<Q128>> {
        Some(Poly::new(
            self.coeffs
                .iter()
                .map(Q128::from_rational)
                .collect::<Option<_>>()?,
        ))
    }

    /// Exponent of `(s - lambda)` in `self` (which must be nonzero).
    pub fn multiplicity(&self, lambda: &Rational) -> usize {
        self.strip_root(lambda).1
    }

    /// `self / (s - lambda)^k` and `k`, the multiplicity of `lambda`.
    pub fn strip_root(&self, lambda: &Rational) -> (Poly, usize) {
        with_fallback(
            || {
                let (q, k) = self
                    .to_q128()?
                    .strip_root_in(&Q128::from_rational(lambda)?)?;
                Some((q.to_rational(), k))
            },
            || self.strip_root_in(lambda),
        )
    }

    fn squarefree_part(&self) -> Poly {
        with_fallback(
            || Some(self.to_q128()?.squarefree_part_in()?.to_rational()),
            || self.squarefree_part_in(),
        )
    }

    /// All distinct rational roots, ascending.
    ///
    /// Candidates come from the rational root theorem applied to the
    /// square-free part with cleared denominators; each is confirmed by exact
    /// evaluation. Coefficients too large to factor by trial division are
    /// reported as `Err` with the offending integer.
    pub fn rational_roots(&self) -> Result<Vec<Rational>, BigInt> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let sq = self.squarefree_part();
        let mut roots = Vec::new();
        let mut ints = integer_coefficients(&sq);
        // strip the root at zero
        let shift = ints.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            roots.push(<Rational as Zero>::zero());
            ints.drain(..shift);
        }
        if ints.len() > 1 {
            let low = ints[0].abs();
            let high = ints[ints.len() - 1].abs();
            let nums = divisors(&low)?;
            let dens = divisors(&high)?;
            let poly = Poly::new(
                ints.iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect(),
            );
            let small = poly.to_q128();
            for p in &nums {
                for q in &dens {
                    if !p.gcd(q).is_one() {
                        continue;
                    }
                    for sign in [1, -1] {
                        let cand = Rational::new(p * BigInt::from(sign), q.clone());
                        let root = with_fallback(
                            || {
                                Some(
                                    small
                                        .as_ref()?
                                        .eval(&Q128::from_rational(&cand)?)?
                                        .is_zero(),
                                )
                            },
                            || Some(Field::is_zero(&poly.eval(&cand)?)),
                        );
                        if root {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

impl Poly<Rational> {
    /// Yun's square-free decomposition of a nonzero polynomial: `a_1, a_2, ...`
    /// monic, square-free, pairwise coprime, with `self ~ a_1 a_2^2 a_3^3 ...`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let f = self.monic().expect("exact");
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let df = f.derivative().expect("exact");
        let a0 = f.gcd(&df).expect("exact");
        let mut b = f.div_rem(&a0).expect("exact").0;
        let c = df.div_rem(&a0).expect("exact").0;
        let mut d = c.sub(&b.derivative().expect("exact")).expect("exact");
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d).expect("exact");
            b = b.div_rem(&a).expect("exact").0;
            let c = d.div_rem(&a).expect("exact").0;
            d = c.sub(&b.derivative().expect("exact")).expect("exact");
            out.push(a);
        }
        out
    }
}

/// Pairwise coprime monic polynomials such that every input square-free
/// polynomial is a product of some of them. Inputs must be square-free.
pub fn coprime_base(polys: &[Poly]) -> Vec<Poly> {
    let mut base: Vec<Poly> = polys
        .iter()
        .filter(|p| p.degree().unwrap_or(0) > 0)
        .map(|p| p.monic().expect("exact"))
        .collect();
    'refine: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]).expect("exact");
                if g.degree().unwrap_or(0) > 0 {
                    let a = base[i].div_rem(&g).expect("exact").0;
                    let b = base[j].div_rem(&g).expect("exact").0;
                    base.remove(j);
                    base.remove(i);
                    base.extend(
                        [a, b, g]
                            .into_iter()
                            .filter(|p| p.degree().unwrap_or(0) > 0),
                    );
                    continue 'refine;
                }
            }
        }
        break;
    }
    base.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    base
}

fn integer_coefficients(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>, BigInt> {
    let Some(mut m) = n.to_u64().filter(|&v| v <= TRIAL_DIVISION_LIMIT) else {
        return Err(n.clone());
    };
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut x = *d;
            for _ in 0..=e {
                next.push(x);
                x *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs.into_iter().map(BigInt::from).collect())
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Field::is_zero(c) {
                continue;
            }
            let c = format_rational(c);
            terms.push(match k {
                0 => c,
                1 => format!("({c})s"),
                _ => format!("({c})s^{k}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}
