//! Univariate polynomials, just enough to split semisimple algebras:
//! minimal polynomials, gcds and roots in the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, Scalar};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> Poly {
        let field = c.field();
        Poly::new(field, vec![c])
    }

    /// `x - a`.
    pub fn linear(a: &Scalar) -> Poly {
        let field = a.field();
        Poly::new(field, vec![-a, field.one()])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Poly::new(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                super::fma(&mut out[i + j], a, b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (Poly::zero(self.field), Poly::zero(self.field));
        };
        if n < d {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Poly) -> Poly {
        let mut acc = Poly::constant(self.field.one()).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Roots lying in the base field, sorted and without repetition.
    ///
    /// Over `Q` this uses the rational root test and gives up (returning the
    /// roots found so far, possibly none) once the integer coefficients get
    /// too large to factor by trial division.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = match self.field {
            Field::Rationals => rational_roots(self),
            Field::Prime(p) => prime_field_roots(self, p),
        };
        roots.sort();
        roots.dedup();
        roots
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;
const BRUTE_FORCE_PRIME_LIMIT: u64 = 1 << 16;

fn rational_roots(poly: &Poly) -> Vec<Scalar> {
    let field = poly.field;
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in &poly.coeffs {
        lcm = lcm.lcm(c.as_rational().unwrap().denom());
    }
    let ints: Vec<BigInt> = poly
        .coeffs
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.numer() * (&lcm / r.denom())
        })
        .collect();
    let mut roots = Vec::new();
    // Strip factors of x.
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(field.zero());
    }
    let ints = &ints[shift..];
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(c0), Some(cn)) = (ints[0].abs().to_u64(), ints[ints.len() - 1].abs().to_u64()) else {
        return roots;
    };
    if c0 > TRIAL_DIVISION_LIMIT || cn > TRIAL_DIVISION_LIMIT {
        return roots;
    }
    let trimmed = Poly::new(
        field,
        ints.iter()
            .map(|c| Scalar::Rational(c.clone().into()))
            .collect(),
    );
    for p in divisors(c0) {
        for q in divisors(cn) {
            for sign in [1i64, -1] {
                let cand = field.from_ratio(sign * p as i64, q as i64).expect("q > 0");
                if trimmed.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn prime_field_roots(poly: &Poly, p: u64) -> Vec<Scalar> {
    let field = poly.field;
    if p <= BRUTE_FORCE_PRIME_LIMIT {
        return (0..p)
            .map(|v| Scalar::Mod {
                value: v,
                modulus: p,
            })
            .filter(|x| poly.eval(x).is_zero())
            .collect();
    }
    // Product of the distinct linear factors: gcd(f, x^p - x).
    let f = poly.monic();
    let xp = Poly::x(field).pow_mod(p, &f);
    let split = f.gcd(&xp.sub(&Poly::x(field)));
    let mut roots = Vec::new();
    equal_degree_roots(&split, p, &mut roots);
    roots
}

/// Cantor-Zassenhaus splitting of a product of distinct linear factors,
/// using the deterministic shifts `x + 1, x + 2, ...`.
fn equal_degree_roots(g: &Poly, p: u64, out: &mut Vec<Scalar>) {
    let field = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-&g.monic().coeffs[0]),
        Some(_) => {
            for a in 1..p {
                let shifted = Poly::new(field, vec![field.from_i64(a as i64), field.one()]);
                let h = shifted
                    .pow_mod((p - 1) / 2, g)
                    .sub(&Poly::constant(field.one()));
                let d = g.gcd(&h);
                let deg = d.degree().unwrap_or(0);
                if deg > 0 && deg < g.degree().unwrap() {
                    let (other, _) = g.divrem(&d);
                    equal_degree_roots(&d, p, out);
                    equal_degree_roots(&other.monic(), p, out);
                    return;
                }
            }
        }
    }
}
