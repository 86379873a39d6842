//! Arithmetic in `F_{2^m}`.
//!
//! Elements are bit vectors packed into a `u32` (bit `l` is the coefficient
//! of `x^l`) and always kept fully reduced modulo the field polynomial, so
//! structural equality is field equality.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree (the modulus must fit a `u32`).
pub const MAX_DEGREE: u32 = 31;

/// Environment variable naming a JSON file that overrides [`DEFAULT_MODULI`].
pub const FIELD_TABLE_ENV: &str = "CCC_FIELD_TABLE";

/// One irreducible polynomial per `m` in `1..=16`: minimal weight, then
/// smallest integer encoding.
pub const DEFAULT_MODULI: [u32; 16] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

#[inline]
fn degree_u64(p: u64) -> u32 {
    63 - p.leading_zeros()
}

/// Remainder of carry-less division `a mod b` over `F_2`, `b != 0`.
pub(crate) fn clmod(mut a: u64, b: u64) -> u64 {
    let db = degree_u64(b);
    while a != 0 && degree_u64(a) >= db {
        a ^= b << (degree_u64(a) - db);
    }
    a
}

/// Irreducibility over `F_2` by trial division with every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible_f2(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let d = degree_u64(p);
    if d == 0 {
        return false;
    }
    let max_div = 1u64 << (d / 2 + 1);
    (2..max_div).all(|q| clmod(p, q) != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub struct FieldSpec {
    m: u32,
    modulus: u32,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    m: u32,
    modulus: String,
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::new(r.m, parse_binary_literal(&r.modulus)?)
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        FieldSpecRepr { m: f.m, modulus: format_binary_literal(f.modulus) }
    }
}

/// Parses `"0b1011"` (or bare `"1011"`); the rightmost digit is the constant term.
pub fn parse_binary_literal(s: &str) -> Result<u32> {
    let t = s.trim();
    let digits = t.strip_prefix("0b").unwrap_or(t);
    if digits.is_empty() || digits.len() > 32 {
        return Err(Error::Parse(format!("bad binary literal {s:?}")));
    }
    u32::from_str_radix(digits, 2).map_err(|_| Error::Parse(format!("bad binary literal {s:?}")))
}

pub fn format_binary_literal(v: u32) -> String {
    format!("0b{v:b}")
}

impl FieldSpec {
    /// Validates that `modulus` is irreducible of degree exactly `m`.
    pub fn new(m: u32, modulus: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidField(format!("m must be in 1..={MAX_DEGREE}, got {m}")));
        }
        if modulus == 0 || degree_u64(modulus as u64) != m {
            return Err(Error::InvalidField(format!(
                "modulus {} does not have degree {m}",
                format_binary_literal(modulus)
            )));
        }
        if !is_irreducible_f2(modulus as u64) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over F_2",
                format_binary_literal(modulus)
            )));
        }
        Ok(FieldSpec { m, modulus })
    }

    /// The field with the built-in modulus for `m`.
    pub fn default_for(m: u32) -> Result<Self> {
        match m {
            1..=16 => FieldSpec::new(m, DEFAULT_MODULI[m as usize - 1]),
            _ => Err(Error::InvalidField(format!(
                "no default modulus for m = {m}; supply one explicitly"
            ))),
        }
    }

    /// `F_2` itself.
    pub fn binary() -> Self {
        FieldSpec { m: 1, modulus: DEFAULT_MODULI[0] }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^m`.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    pub fn mask(&self) -> u32 {
        ((1u64 << self.m) - 1) as u32
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits & !self.mask() != 0 {
            return Err(Error::FieldMismatch(format!(
                "{bits:#b} is not an element of F_2^{}",
                self.m
            )));
        }
        Ok(FieldElement { spec: *self, bits })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 1 }
    }

    #[inline]
    pub fn add_bits(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    /// Product of two reduced elements, reduced modulo the field polynomial.
    #[inline]
    pub fn mul_bits(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return a & b;
        }
        let mut acc = 0u64;
        let mut a = a as u64;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        clmod(acc, self.modulus as u64) as u32
    }

    pub fn pow_bits(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.mul_bits(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on bit polynomials.
    pub fn inv_bits(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        // invariant: s_i * a == r_i (mod modulus)
        let (mut r0, mut r1) = (self.modulus as u64, a as u64);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 0 {
            let mut q = 0u64;
            let mut r = r0;
            let d1 = degree_u64(r1);
            while r != 0 && degree_u64(r) >= d1 {
                let shift = degree_u64(r) - d1;
                q ^= 1 << shift;
                r ^= r1 << shift;
            }
            let mut qs = 0u64;
            let mut qq = q;
            let mut sh = s1;
            while qq != 0 {
                if qq & 1 == 1 {
                    qs ^= sh;
                }
                sh <<= 1;
                qq >>= 1;
            }
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s0 ^ qs);
        }
        debug_assert_eq!(r0, 1);
        Some(clmod(s0, self.modulus as u64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.m)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_2^{} mod {}", self.m, format_binary_literal(self.modulus))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    bits: u32,
}

impl FieldElement {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.spec, other.spec)));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { spec: self.spec, bits: self.bits ^ other.bits })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement { spec: self.spec, bits: self.spec.mul_bits(self.bits, other.bits) })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let bits = self.spec.inv_bits(self.bits).ok_or(Error::NotInvertible)?;
        Ok(FieldElement { spec: self.spec, bits })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement { spec: self.spec, bits: self.spec.pow_bits(self.bits, e) }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_binary_literal(self.bits))
    }
}

/// Per-degree modulus choices, `m -> modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusTable {
    moduli: BTreeMap<u32, u32>,
}

impl Default for ModulusTable {
    fn default() -> Self {
        let moduli = DEFAULT_MODULI.iter().enumerate().map(|(i, &p)| (i as u32 + 1, p)).collect();
        ModulusTable { moduli }
    }
}

impl ModulusTable {
    /// Reads `{"3": "0b1011", ...}`; entries override the defaults.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, String> = serde_json::from_str(text)?;
        let mut table = ModulusTable::default();
        for (k, v) in raw {
            let m: u32 = k.trim().parse().map_err(|_| Error::Parse(format!("bad degree key {k:?}")))?;
            let spec = FieldSpec::new(m, parse_binary_literal(&v)?)?;
            table.moduli.insert(m, spec.modulus);
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Defaults, overridden by the file named in `CCC_FIELD_TABLE` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(FIELD_TABLE_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    pub fn spec(&self, m: u32) -> Result<FieldSpec> {
        match self.moduli.get(&m) {
            Some(&p) => FieldSpec::new(m, p),
            None => Err(Error::InvalidField(format!("no modulus configured for m = {m}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(m: u32) -> FieldSpec {
        FieldSpec::default_for(m).unwrap()
    }

    #[test]
    fn add_examples() {
        let f3 = f(3);
        let a = f3.element(0b011).unwrap();
        assert_eq!(a.add(&a).unwrap().bits(), 0);
        let b = f3.element(0b101).unwrap();
        let c = f3.element(0b010).unwrap();
        assert_eq!(b.add(&c).unwrap().bits(), 0b111);
        let f1 = f(1);
        assert_eq!(f1.one().add(&f1.zero()).unwrap().bits(), 1);
    }

    #[test]
    fn mul_example_x_times_x2() {
        let f3 = f(3);
        assert_eq!(f3.modulus(), 0b1011);
        let x = f3.element(0b010).unwrap();
        let x2 = f3.element(0b100).unwrap();
        assert_eq!(x.mul(&x2).unwrap().bits(), 0b011);
    }

    #[test]
    fn inverse_examples_match_exhaustive_search() {
        let f3 = f(3);
        let brute = |spec: FieldSpec, a: u32| (1..spec.order() as u32).find(|&b| spec.mul_bits(a, b) == 1).unwrap();
        assert_eq!(brute(f3, 0b010), 0b101);
        assert_eq!(f3.element(0b010).unwrap().inv().unwrap().bits(), 0b101);
        let f2 = f(2);
        assert_eq!(brute(f2, 0b10), 0b11);
        assert_eq!(f2.element(0b10).unwrap().inv().unwrap().bits(), 0b11);
        for m in 1..=8 {
            assert_eq!(f(m).one().inv().unwrap().bits(), 1);
        }
    }

    #[test]
    fn zero_is_not_invertible() {
        assert_eq!(f(4).zero().inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = f(3).one();
        let b = f(4).one();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
        assert!(f(3).element(0b1000).is_err());
    }

    #[test]
    fn construction_rejects_bad_moduli() {
        assert!(FieldSpec::new(3, 0b1111).is_err()); // (x+1)^3
        assert!(FieldSpec::new(3, 0b10011).is_err()); // wrong degree
        assert!(FieldSpec::new(0, 0b1).is_err());
        assert!(FieldSpec::new(4, 0b11001).is_ok());
    }

    #[test]
    fn default_table_is_minimal_weight_then_least() {
        for m in 1..=16u32 {
            let cands: Vec<u64> =
                ((1u64 << m)..(1u64 << (m + 1))).filter(|&p| is_irreducible_f2(p)).collect();
            let w = cands.iter().map(|p| p.count_ones()).min().unwrap();
            let best = *cands.iter().filter(|p| p.count_ones() == w).min().unwrap();
            assert_eq!(DEFAULT_MODULI[m as usize - 1] as u64, best, "m = {m}");
        }
    }

    #[test]
    fn group_order_is_two_to_m_minus_one() {
        for m in 1..=8 {
            let spec = f(m);
            for a in 1..spec.order() as u32 {
                assert_eq!(spec.pow_bits(a, spec.order() - 1), 1);
                assert_eq!(spec.mul_bits(a, spec.inv_bits(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let s = serde_json::to_string(&f(3)).unwrap();
        assert_eq!(s, r#"{"m":3,"modulus":"0b1011"}"#);
        let back: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f(3));
        assert!(serde_json::from_str::<FieldSpec>(r#"{"m":3,"modulus":"0b1111"}"#).is_err());
    }

    #[test]
    fn table_override_from_json() {
        let t = ModulusTable::from_json(r#"{"3": "0b1101"}"#).unwrap();
        assert_eq!(t.spec(3).unwrap().modulus(), 0b1101);
        assert_eq!(t.spec(4).unwrap().modulus(), 0x13);
        assert!(ModulusTable::from_json(r#"{"3": "0b1111"}"#).is_err());
    }

    proptest! {
        #[test]
        fn ring_axioms(m in 1u32..=8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let spec = f(m);
            let (a, b, c) = (a & spec.mask(), b & spec.mask(), c & spec.mask());
            prop_assert_eq!(spec.mul_bits(a, b), spec.mul_bits(b, a));
            prop_assert_eq!(spec.mul_bits(spec.mul_bits(a, b), c), spec.mul_bits(a, spec.mul_bits(b, c)));
            prop_assert_eq!(spec.mul_bits(a, b ^ c), spec.mul_bits(a, b) ^ spec.mul_bits(a, c));
            prop_assert_eq!(spec.mul_bits(a, 1), a);
            prop_assert_eq!(spec.mul_bits(a, 0), 0);
        }
    }
}
