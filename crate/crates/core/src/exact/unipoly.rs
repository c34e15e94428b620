use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::rational::{int, Rational};

/// Univariate polynomial over ℚ, coefficients in ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(lc) => self.scale(&(Rational::one() / lc)),
            None => UniPoly::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let f = r.last().unwrap() / lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            q[shift] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// All rational roots, ascending.
    ///
    /// For a root `r = a/b` in lowest terms of a primitive integer polynomial
    /// with leading coefficient `c`, `b` divides `c`, so `|c|·r` is an integer.
    /// Sturm bisection over half-integer endpoints of `|c|·x` isolates each such
    /// integer without factoring any coefficient; every candidate is then
    /// confirmed by exact evaluation.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut p = self.squarefree_part();
        let Some(deg) = p.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            p = UniPoly::new(p.coeffs[1..].to_vec());
        }
        roots.extend(p.nonzero_rational_roots());
        roots.sort();
        roots
    }

    /// Rational roots of a squarefree polynomial with `p(0) ≠ 0`.
    fn nonzero_rational_roots(&self) -> Vec<Rational> {
        let p = self;
        let deg = p.degree().unwrap_or(0);
        if deg == 0 {
            return Vec::new();
        }
        let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = p.coeffs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let lead = (ints.last().unwrap() / &content).abs();
        if has_no_roots_mod_some_prime(&ints, &lead) {
            return Vec::new();
        }
        let scale = Rational::from_integer(lead.clone());

        // Cauchy bound on |root|, then on |lead·root|.
        let lc = p.leading().unwrap();
        let max_ratio = p.coeffs[..deg]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let bound = ((max_ratio + Rational::one()) * &scale).ceil().to_integer() + BigInt::one();

        let sturm = sturm_chain(p);
        let variations = |y2: &BigInt| -> usize {
            // Evaluate at x = (y2/2)/lead, a half-integer multiple of 1/lead.
            let x = Rational::new(y2.clone(), BigInt::from(2) * &lead);
            sign_variations(&sturm, &x)
        };

        let mut roots = Vec::new();
        // Intervals in doubled coordinates: (2L+1, 2U+1] contains integers L+1..=U.
        let mut stack = vec![(-&bound - BigInt::one(), bound.clone())];
        while let Some((lo, hi)) = stack.pop() {
            let vlo = variations(&(BigInt::from(2) * &lo + 1));
            let vhi = variations(&(BigInt::from(2) * &hi + 1));
            if vlo <= vhi {
                continue;
            }
            if &hi - &lo == BigInt::one() {
                let cand = Rational::from_integer(hi) / &scale;
                if p.eval(&cand).is_zero() {
                    roots.push(cand);
                }
                continue;
            }
            let mid = (&lo + &hi).div_floor(&BigInt::from(2));
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        roots.sort();
        roots
    }
}

const SIEVE_PRIMES: [u64; 24] = [
    5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
];

/// A rational root `a/b` of an integer polynomial has `b | lead`, so for a
/// prime `q ∤ lead` it reduces to a root mod `q`. No root mod `q` therefore
/// certifies that there is no rational root at all.
fn has_no_roots_mod_some_prime(ints: &[BigInt], lead: &BigInt) -> bool {
    SIEVE_PRIMES.iter().any(|&q| {
        let bq = BigInt::from(q);
        if (lead % &bq).is_zero() {
            return false;
        }
        let cs: Vec<u64> = ints
            .iter()
            .map(|c| c.mod_floor(&bq).to_u64().expect("residue fits"))
            .collect();
        (0..q).all(|x| cs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % q) != 0)
    })
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-Rational::one()));
    }
    chain
}

fn sign_variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in chain {
        let v = q.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
                    match rhs.coeffs.get(i) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}λ", if show_coeff { "·" } else { "" })?,
                _ => write!(f, "{}λ^{i}", if show_coeff { "·" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::rational::ser_rationals(&self.coeffs, s)
    }
}
