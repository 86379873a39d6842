//! Dense univariate polynomials over `F_{2^m}`, the factorization of
//! `x^n - 1` for odd `n`, and reciprocal polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_binary_literal, FieldElement, FieldSpec};
use crate::splitting::{cyclotomic_cosets, multiplicative_order, SplittingField};

/// Coefficient `i` is the coefficient of `x^i`; trailing zeros are stripped,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<u32>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|&&c| c & !field.mask() != 0) {
            return Err(Error::FieldMismatch(format!("coefficient {c:#b} outside {field}")));
        }
        Ok(Self::from_raw(field, coeffs))
    }

    /// Caller guarantees every coefficient is a reduced element of `field`.
    pub(crate) fn from_raw(field: FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_elements(coeffs: &[FieldElement]) -> Result<Self> {
        let field = match coeffs.first() {
            Some(c) => c.spec(),
            None => return Err(Error::InvalidParameters("empty coefficient list".into())),
        };
        if coeffs.iter().any(|c| c.spec() != field) {
            return Err(Error::FieldMismatch("coefficients from different fields".into()));
        }
        Ok(Self::from_raw(field, coeffs.iter().map(|c| c.bits()).collect()))
    }

    pub fn zero(field: FieldSpec) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Polynomial { field, coeffs: vec![1] }
    }

    pub fn x(field: FieldSpec) -> Self {
        Polynomial { field, coeffs: vec![0, 1] }
    }

    pub fn constant(field: FieldSpec, c: u32) -> Self {
        Self::from_raw(field, vec![c & field.mask()])
    }

    /// `c * x^deg`.
    pub fn monomial(field: FieldSpec, deg: usize, c: u32) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c & field.mask();
        Self::from_raw(field, coeffs)
    }

    /// `x^n + 1` (which is `x^n - 1` in characteristic 2).
    pub fn x_pow_minus_one(field: FieldSpec, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        coeffs[n] ^= 1;
        Self::from_raw(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Coefficients padded with zeros to exactly `len` entries (truncating
    /// is a logic error and panics).
    pub fn padded(&self, len: usize) -> Vec<u32> {
        assert!(self.coeffs.len() <= len, "polynomial longer than {len}");
        let mut v = self.coeffs.clone();
        v.resize(len, 0);
        v
    }

    fn same_field(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul_bits(a, c)).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => self.scale(self.field.inv_bits(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Long division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Polynomial::zero(f), self.clone()));
        }
        let inv_lc = f.inv_bits(divisor.leading()).expect("nonzero leading coefficient");
        let mut quot = vec![0u32; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul_bits(c, inv_lc);
            quot[i - db] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - db + j] ^= f.mul_bits(factor, d);
            }
        }
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    /// Remainder modulo a nonzero polynomial from the same field.
    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.divmod(divisor).expect("nonzero divisor of the same field").1
    }

    /// Reduction modulo `x^len - 1` by folding exponents.
    pub fn reduce_cyclic(&self, len: usize) -> Polynomial {
        let mut v = vec![0u32; len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i % len] ^= c;
        }
        Self::from_raw(self.field, v)
    }

    /// `a(x) -> a(x^{-1})` in `F[x]/<x^len - 1>`: coefficient `i` moves to
    /// `(len - i) mod len`.
    pub fn reflect_cyclic(&self, len: usize) -> Polynomial {
        let mut v = vec![0u32; len];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[(len - i % len) % len] ^= c;
        }
        Self::from_raw(self.field, v)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul_bits(acc, x) ^ c)
    }

    /// Orders by the integer encoding of the coefficient vector (highest
    /// degree most significant).
    pub fn cmp_encoding(&self, other: &Polynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Parses the `F_2` text form, e.g. `"x^3+x+1"`.
    pub fn parse_binary(field: FieldSpec, text: &str) -> Result<Polynomial> {
        if field.m() != 1 {
            return Err(Error::Parse("text form is only defined over F_2".into()));
        }
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(Polynomial::zero(field));
        }
        let mut coeffs: Vec<u32> = Vec::new();
        for term in t.split('+') {
            let deg = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad term {term:?} in {text:?}")))?,
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] ^= 1;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    /// JSON form: the text form over `F_2`, otherwise a list of
    /// coefficient bit lists (least significant bit first), index = degree.
    pub fn to_repr(&self) -> PolyRepr {
        if self.field.m() == 1 {
            PolyRepr::Text(self.to_string())
        } else {
            let m = self.field.m();
            PolyRepr::Coeffs(
                self.coeffs.iter().map(|&c| (0..m).map(|b| ((c >> b) & 1) as u8).collect()).collect(),
            )
        }
    }

    pub fn from_repr(field: FieldSpec, repr: &PolyRepr) -> Result<Polynomial> {
        match repr {
            PolyRepr::Text(s) => Self::parse_binary(field, s),
            PolyRepr::Coeffs(cs) => {
                let mut out = Vec::with_capacity(cs.len());
                for bits in cs {
                    if bits.len() > field.m() as usize || bits.iter().any(|&b| b > 1) {
                        return Err(Error::Parse(format!("bad coefficient bits {bits:?}")));
                    }
                    out.push(bits.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i)));
                }
                Self::from_coeffs(field, out)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyRepr {
    Text(String),
    Coeffs(Vec<Vec<u8>>),
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = if c == 1 { String::new() } else { format!("({})", format_binary_literal(c)) };
            match i {
                0 if c == 1 => write!(f, "1")?,
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        let (long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut v = long.coeffs.clone();
        for (a, &b) in v.iter_mut().zip(&short.coeffs) {
            *a ^= b;
        }
        Polynomial::from_raw(self.field, v)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "polynomials over different fields");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let f = self.field;
        let mut v = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] ^= f.mul_bits(a, b);
            }
        }
        Polynomial::from_raw(f, v)
    }
}

/// Returns `(g, s, t)` with `g` monic, `g = gcd(a, b)` and `s a + t b = g`.
pub fn extended_gcd(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
    a.same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidParameters("gcd(0, 0) is undefined".into()));
    }
    let f = a.field;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
    let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let s2 = &s0 + &(&q * &s1);
        let t2 = &t0 + &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = f.inv_bits(r0.leading()).expect("nonzero gcd");
    Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
}

/// Reciprocal `x^d f(1/x) = e * g(x)` with `g` monic; returns `(g, e)`.
pub fn reciprocal(f: &Polynomial) -> Result<(Polynomial, FieldElement)> {
    if f.is_zero() || f.coeff(0) == 0 {
        return Err(Error::InvalidParameters(format!("{f} has zero constant term")));
    }
    let field = f.field;
    let reversed = Polynomial::from_raw(field, f.coeffs.iter().rev().copied().collect());
    let e = f.coeff(0);
    Ok((reversed.monic(), field.element(e)?))
}

/// The monic irreducible factors of `x^n - 1` over `F_{2^m}` for odd `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub field: FieldSpec,
    pub n: usize,
    pub factors: Vec<Polynomial>,
}

impl Factorization {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree().unwrap_or(0)).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Checks product, pairwise coprimality and degree sum.
    pub fn verify(&self) -> Result<()> {
        let prod = self.factors.iter().fold(Polynomial::one(self.field), |acc, f| &acc * f);
        if prod != Polynomial::x_pow_minus_one(self.field, self.n) {
            return Err(Error::Internal(format!("factor product {prod} != x^{}-1", self.n)));
        }
        if self.degrees().iter().sum::<usize>() != self.n {
            return Err(Error::Internal("degree sum differs from n".into()));
        }
        for (i, a) in self.factors.iter().enumerate() {
            if !a.is_monic() {
                return Err(Error::Internal(format!("factor {a} is not monic")));
            }
            for b in &self.factors[i + 1..] {
                if !extended_gcd(a, b)?.0.is_one() {
                    return Err(Error::Internal(format!("factors {a} and {b} share a root")));
                }
            }
        }
        Ok(())
    }
}

/// Factors `x^n - 1` through `2^m`-cyclotomic cosets modulo `n`. Each
/// coset's minimal polynomial is assembled in a splitting field from a
/// primitive `n`-th root of unity. Factors are sorted by degree and then by
/// coefficient encoding.
pub fn factor_xn_minus_1(field: FieldSpec, n: usize) -> Result<Factorization> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("n must be odd and positive, got {n}")));
    }
    let q = field.order();
    let ord = multiplicative_order(q, n as u64);
    let ext = SplittingField::new(field, ord)?;
    let alpha = ext.root_of_unity(n as u64)?;
    let mut factors = Vec::new();
    for coset in cyclotomic_cosets(q, n as u64) {
        factors.push(ext.minimal_polynomial(&alpha, &coset)?);
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp_encoding(b)));
    Ok(Factorization { field, n, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldSpec {
        FieldSpec::binary()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse_binary(f2(), s).unwrap()
    }

    #[test]
    fn text_form_round_trip() {
        for s in ["0", "1", "x", "x^3+x+1", "x^12+x^10+x^8+x^6+x^4+x^2+1"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!(Polynomial::parse_binary(f2(), "x^^2").is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x+1") * &p("x+1"), p("x^2+1"));
        assert_eq!(&p("x^3+x+1") * &p("x^3+x^2+1"), p("x^6+x^5+x^4+x^3+x^2+x+1"));
        let a = p("x^5+x^2+1");
        assert_eq!(&a * &Polynomial::one(f2()), a);
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(p("x^2+1").divmod(&p("x+1")).unwrap(), (p("x+1"), p("0")));
        assert_eq!(p("x").divmod(&p("x+1")).unwrap(), (p("1"), p("1")));
        assert_eq!(p("0").divmod(&p("x^2+x")).unwrap(), (p("0"), p("0")));
        assert_eq!(p("x").divmod(&p("0")), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Polynomial::one(f2());
        let b = Polynomial::one(FieldSpec::default_for(2).unwrap());
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&b).is_err());
        assert!(a.divmod(&b).is_err());
    }

    #[test]
    fn bezout_for_n7_first_factor() {
        // F_1 = (x^14 - 1) / (x+1)^2 and f_1^2 = (x+1)^2
        let big = Polynomial::x_pow_minus_one(f2(), 14);
        let f1sq = p("x^2+1");
        let (big_f, r) = big.divmod(&f1sq).unwrap();
        assert!(r.is_zero());
        let (g, s, t) = extended_gcd(&big_f, &f1sq).unwrap();
        assert!(g.is_one());
        assert_eq!(&(&s * &big_f) + &(&t * &f1sq), Polynomial::one(f2()));
    }

    #[test]
    fn gcd_trivial_cases() {
        let a = p("x^4+x+1");
        let (g, _, _) = extended_gcd(&a, &a).unwrap();
        assert_eq!(g, a.monic());
        let one = Polynomial::one(f2());
        assert_eq!(extended_gcd(&a, &one).unwrap(), (one.clone(), Polynomial::zero(f2()), one.clone()));
        let z = Polynomial::zero(f2());
        assert!(extended_gcd(&z, &z).is_err());
    }

    #[test]
    fn factor_examples() {
        let fact = factor_xn_minus_1(f2(), 7).unwrap();
        assert_eq!(fact.factors, vec![p("x+1"), p("x^3+x+1"), p("x^3+x^2+1")]);
        for m in 1..=4 {
            let field = FieldSpec::default_for(m).unwrap();
            let one = factor_xn_minus_1(field, 1).unwrap();
            assert_eq!(one.factors, vec![Polynomial::from_coeffs(field, vec![1, 1]).unwrap()]);
        }
        let three = factor_xn_minus_1(f2(), 3).unwrap();
        assert_eq!(three.factors, vec![p("x+1"), p("x^2+x+1")]);
        three.verify().unwrap();
        assert!(factor_xn_minus_1(f2(), 4).is_err());
        assert!(factor_xn_minus_1(f2(), 0).is_err());
    }

    #[test]
    fn factorization_over_f4_splits_x3_minus_1() {
        let f4 = FieldSpec::default_for(2).unwrap();
        let fact = factor_xn_minus_1(f4, 3).unwrap();
        assert_eq!(fact.degrees(), vec![1, 1, 1]);
        fact.verify().unwrap();
    }

    #[test]
    fn factorization_products_up_to_101() {
        for m in 1..=2 {
            let field = FieldSpec::default_for(m).unwrap();
            for n in (1..=101).step_by(2) {
                let fact = factor_xn_minus_1(field, n).unwrap();
                fact.verify().unwrap_or_else(|e| panic!("m={m} n={n}: {e}"));
                for f in &fact.factors {
                    assert!(f.is_monic());
                }
            }
        }
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal(&p("x^3+x+1")).unwrap(), (p("x^3+x^2+1"), f2().one()));
        assert_eq!(reciprocal(&p("x+1")).unwrap(), (p("x+1"), f2().one()));
        assert_eq!(reciprocal(&p("x^2+x+1")).unwrap(), (p("x^2+x+1"), f2().one()));
        assert!(reciprocal(&p("x^2+x")).is_err());
    }

    #[test]
    fn reciprocal_is_an_involution_on_factors() {
        for m in 1..=3 {
            let field = FieldSpec::default_for(m).unwrap();
            for n in [1usize, 3, 5, 7, 9, 15, 21] {
                let fact = factor_xn_minus_1(field, n).unwrap();
                for f in &fact.factors {
                    let (g, _) = reciprocal(f).unwrap();
                    assert!(fact.factors.contains(&g));
                    assert_eq!(&reciprocal(&g).unwrap().0, f);
                }
            }
        }
    }

    fn arb_poly(m: u32) -> impl Strategy<Value = Polynomial> {
        let field = FieldSpec::default_for(m).unwrap();
        prop::collection::vec(0..(1u32 << m), 0..12)
            .prop_map(move |c| Polynomial::from_coeffs(field, c).unwrap())
    }

    proptest! {
        #[test]
        fn bezout_identity_holds((a, b) in (1u32..=3).prop_flat_map(|m| (arb_poly(m), arb_poly(m)))) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let (g, s, t) = extended_gcd(&a, &b).unwrap();
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert!(g.is_monic());
            prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
        }

        #[test]
        fn divmod_reconstructs((a, b) in (1u32..=3).prop_flat_map(|m| (arb_poly(m), arb_poly(m)))) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
