//! Extension fields `F_q[y]/<g(y)>` used to split `x^n - 1` and assemble
//! minimal polynomials from cyclotomic cosets.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{extended_gcd, Polynomial};

/// Smallest `d >= 1` with `q^d = 1 (mod n)`; `n` must be coprime to `q`.
pub fn multiplicative_order(q: u64, n: u64) -> usize {
    if n == 1 {
        return 1;
    }
    let qm = (q % n) as u128;
    let mut acc = qm;
    let mut d = 1;
    while acc != 1 {
        acc = acc * qm % n as u128;
        d += 1;
    }
    d
}

/// The `q`-cyclotomic cosets modulo `n`, ordered by their least element;
/// each coset lists `i, iq, iq^2, ...`.
pub fn cyclotomic_cosets(q: u64, n: u64) -> Vec<Vec<u64>> {
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut i = start;
        while !seen[i as usize] {
            seen[i as usize] = true;
            coset.push(i);
            i = ((i as u128 * q as u128) % n as u128) as u64;
        }
        cosets.push(coset);
    }
    cosets
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `F_q[y]/<g(y)>` with `g` monic irreducible of the requested degree,
/// found by scanning candidates in increasing encoding.
pub struct SplittingField {
    base: FieldSpec,
    modulus: Polynomial,
    degree: usize,
}

impl SplittingField {
    pub fn new(base: FieldSpec, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParameters("extension degree must be positive".into()));
        }
        if degree == 1 {
            let modulus = Polynomial::x(base);
            return Ok(SplittingField { base, modulus, degree });
        }
        let q = base.order();
        for counter in 1u64.. {
            let mut coeffs = Vec::with_capacity(degree + 1);
            let mut c = counter;
            for _ in 0..degree {
                coeffs.push((c % q) as u32);
                c /= q;
            }
            if c != 0 {
                break;
            }
            coeffs.push(1);
            let g = Polynomial::from_raw(base, coeffs);
            if g.coeff(0) != 0 && is_irreducible(&g) {
                return Ok(SplittingField { base, modulus: g, degree });
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {degree} found")))
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        (a * b).rem(&self.modulus)
    }

    fn pow(&self, a: &Polynomial, e: &BigUint) -> Polynomial {
        let mut acc = Polynomial::one(self.base);
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn element(&self, index: u64) -> Polynomial {
        let q = self.base.order();
        let mut c = index;
        let mut coeffs = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            coeffs.push((c % q) as u32);
            c /= q;
        }
        Polynomial::from_raw(self.base, coeffs)
    }

    /// An element of multiplicative order exactly `n`; `n` must divide
    /// `q^degree - 1`.
    pub fn root_of_unity(&self, n: u64) -> Result<Polynomial> {
        let group_order = BigUint::from(self.base.order()).pow(self.degree as u32) - 1u32;
        if &group_order % n != BigUint::from(0u32) {
            return Err(Error::InvalidParameters(format!("{n} does not divide the group order")));
        }
        let cofactor = &group_order / n;
        let one = Polynomial::one(self.base);
        let primes = prime_factors(n);
        let limit = self.base.order().saturating_pow(self.degree.min(8) as u32);
        for index in 1..limit.max(2) {
            let z = self.element(index);
            let a = self.pow(&z, &cofactor);
            let exact = primes.iter().all(|&p| self.pow(&a, &BigUint::from(n / p)) != one);
            if exact {
                return Ok(a);
            }
        }
        Err(Error::Internal(format!("no element of order {n} found")))
    }

    /// `prod_{i in coset} (x - alpha^i)`, which has coefficients in the base field.
    pub fn minimal_polynomial(&self, alpha: &Polynomial, coset: &[u64]) -> Result<Polynomial> {
        // coefficients in the extension, index = degree in x
        let mut acc: Vec<Polynomial> = vec![Polynomial::one(self.base)];
        for &i in coset {
            let root = self.pow(alpha, &BigUint::from(i));
            let mut next = vec![Polynomial::zero(self.base); acc.len() + 1];
            for (j, c) in acc.iter().enumerate() {
                next[j + 1] = &next[j + 1] + c;
                next[j] = &next[j] + &self.mul(c, &root);
            }
            acc = next;
        }
        let mut coeffs = Vec::with_capacity(acc.len());
        for c in &acc {
            if c.degree().unwrap_or(0) > 0 {
                return Err(Error::Internal("minimal polynomial left the base field".into()));
            }
            coeffs.push(c.coeff(0));
        }
        Ok(Polynomial::from_raw(self.base, coeffs))
    }
}

/// Rabin's test: `g` of degree `d` is irreducible over `F_q` iff
/// `y^{q^d} = y (mod g)` and `gcd(y^{q^{d/p}} - y, g) = 1` for each prime `p | d`.
fn is_irreducible(g: &Polynomial) -> bool {
    let field = g.field();
    let d = match g.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let y = Polynomial::x(field).rem(g);
    let maximal_divisors: Vec<usize> = prime_factors(d as u64).into_iter().map(|p| d / p as usize).collect();
    let mut h = y.clone();
    for step in 1..=d {
        for _ in 0..field.m() {
            h = (&h * &h).rem(g);
        }
        if maximal_divisors.contains(&step) {
            let diff = &h + &y;
            match extended_gcd(&diff, g) {
                Ok((gcd, _, _)) if gcd.is_one() => {}
                _ => return false,
            }
        }
    }
    h == y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_cosets() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(2, 1), 1);
        assert_eq!(multiplicative_order(4, 7), 3);
        assert_eq!(multiplicative_order(2, 101), 100);
        assert_eq!(cyclotomic_cosets(2, 7), vec![vec![0], vec![1, 2, 4], vec![3, 6, 5]]);
        assert_eq!(cyclotomic_cosets(2, 3), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn rabin_agrees_with_trial_division_over_f2() {
        let f2 = FieldSpec::binary();
        for bits in 2u32..512 {
            let coeffs: Vec<u32> = (0..10).map(|i| (bits >> i) & 1).collect();
            let g = Polynomial::from_raw(f2, coeffs);
            assert_eq!(is_irreducible(&g), crate::field::is_irreducible_f2(bits as u64), "{g}");
        }
    }

    #[test]
    fn root_has_exact_order() {
        let f2 = FieldSpec::binary();
        let ext = SplittingField::new(f2, 4).unwrap();
        let a = ext.root_of_unity(15).unwrap();
        let one = Polynomial::one(f2);
        assert_eq!(ext.pow(&a, &BigUint::from(15u32)), one);
        for e in 1..15u32 {
            assert_ne!(ext.pow(&a, &BigUint::from(e)), one);
        }
    }
}
