//! Ideals of `K_j[u]/<u^k>`, where `K_j = F_{2^m}[x]/<f_j(x)^2>`.
//!
//! Every ideal falls in exactly one of six families:
//!
//! | case | ideal                                  | parameters                                   | log2 size            |
//! |------|----------------------------------------|----------------------------------------------|----------------------|
//! | I    | `<u^i>`                                | `0 <= i <= k`                                | `2 m d (k - i)`      |
//! | II   | `<u^s f>`                              | `0 <= s <= k-1`                              | `m d (k - s)`        |
//! | III  | `<u^i + u^t f w>`                      | `0 <= t < i <= k-1`, `t >= 2i-k`, `w` mod `u^{i-t}` | `2 m d (k - i)` |
//! | IV   | `<u^i + u^t f w>`                      | `0 <= t < i <= k-1`, `t < 2i-k`, `w` mod `u^{k-i}`  | `m d (k - t)`   |
//! | V    | `<u^i, u^s f>`                         | `0 <= s < i <= k-1`                          | `m d (2k - i - s)`   |
//! | VI   | `<u^i + u^t f w, u^s f>`               | `0 <= t < s < i <= k-1`, `i+s <= k+t-1`, `w` mod `u^{s-t}` | `m d (2k - i - s)` |
//!
//! where `w` ranges over units of `F_j[u]/<u^p>` and `F_j = F_{2^m}[x]/<f_j>`
//! has `q = 2^{m d}` elements.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Echelon;
use crate::poly::Polynomial;

/// Element of `F_j[u]/<u^s>` as u-adic digits; each digit is a residue
/// field element given by its `d_j` coefficients over `F_{2^m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainElement {
    digits: Vec<Vec<u32>>,
}

impl ChainElement {
    /// All digits must have the same length `d_j`.
    pub fn new(digits: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(first) = digits.first() {
            if first.is_empty() || digits.iter().any(|d| d.len() != first.len()) {
                return Err(Error::InvalidDescriptor("omega digits must share one nonzero length".into()));
            }
        }
        Ok(ChainElement { digits })
    }

    /// Builds digits from their integer encodings `sum_l c_l 2^{m l}`.
    pub fn from_indices(m: u32, dj: usize, indices: &[u64]) -> Self {
        let mask = (1u64 << m) - 1;
        let digits = indices
            .iter()
            .map(|&idx| (0..dj).map(|l| ((idx >> (m as usize * l)) & mask) as u32).collect())
            .collect();
        ChainElement { digits }
    }

    pub fn one(dj: usize, precision: usize) -> Self {
        let mut digits = vec![vec![0u32; dj]; precision];
        if let Some(d) = digits.first_mut() {
            d[0] = 1;
        }
        ChainElement { digits }
    }

    pub fn digits(&self) -> &[Vec<u32>] {
        &self.digits
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// Units are exactly the elements with a nonzero leading digit.
    pub fn is_unit(&self) -> bool {
        self.digits.first().is_some_and(|d| d.iter().any(|&c| c != 0))
    }

    pub fn truncate(&self, precision: usize) -> ChainElement {
        ChainElement { digits: self.digits[..precision.min(self.digits.len())].to_vec() }
    }

    pub fn digit_polynomial(&self, field: FieldSpec, l: usize) -> Polynomial {
        Polynomial::from_raw(field, self.digits[l].clone())
    }
}

/// Units of `F_j[u]/<u^precision>` in lexicographic digit order, each digit
/// ordered by its integer encoding.
pub struct UnitIter {
    m: u32,
    dj: usize,
    q: u64,
    state: Option<Vec<u64>>,
}

impl UnitIter {
    pub fn new(m: u32, dj: usize, precision: usize) -> Result<Self> {
        let bits = m as usize * dj;
        if bits > 63 {
            return Err(Error::SizeGuard(format!("residue field of 2^{bits} elements is too large to enumerate")));
        }
        let state = if precision == 0 {
            None
        } else {
            let mut s = vec![0u64; precision];
            s[0] = 1;
            Some(s)
        };
        Ok(UnitIter { m, dj, q: 1u64 << bits, state })
    }
}

impl Iterator for UnitIter {
    type Item = ChainElement;

    fn next(&mut self) -> Option<ChainElement> {
        let cur = self.state.as_mut()?;
        let out = ChainElement::from_indices(self.m, self.dj, cur);
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.state = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < self.q {
                break;
            }
            cur[pos] = if pos == 0 { self.q } else { 0 };
            if pos == 0 {
                self.state = None;
                break;
            }
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum IdealCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for IdealCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum IdealKind {
    /// `<u^i>`
    I { i: u32 },
    /// `<u^s f>`
    II { s: u32 },
    /// `<u^i + u^t f w>`, `t >= 2i - k`
    III { i: u32, t: u32, omega: ChainElement },
    /// `<u^i + u^t f w>`, `t < 2i - k`
    IV { i: u32, t: u32, omega: ChainElement },
    /// `<u^i, u^s f>`
    V { i: u32, s: u32 },
    /// `<u^i + u^t f w, u^s f>`
    VI { i: u32, s: u32, t: u32, omega: ChainElement },
}

/// One ideal of `K_j[u]/<u^k>`; the factor itself is supplied only when
/// generators are materialized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DescriptorRepr", into = "DescriptorRepr")]
pub struct IdealDescriptor {
    pub kind: IdealKind,
    pub dj: usize,
    pub k: u32,
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    case: IdealCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<Vec<u32>>>,
    dj: usize,
    k: u32,
}

impl From<IdealDescriptor> for DescriptorRepr {
    fn from(d: IdealDescriptor) -> Self {
        let case = d.case_of();
        let (i, s, t, omega) = match d.kind {
            IdealKind::I { i } => (Some(i), None, None, None),
            IdealKind::II { s } => (None, Some(s), None, None),
            IdealKind::III { i, t, omega } | IdealKind::IV { i, t, omega } => {
                (Some(i), None, Some(t), Some(omega.digits))
            }
            IdealKind::V { i, s } => (Some(i), Some(s), None, None),
            IdealKind::VI { i, s, t, omega } => (Some(i), Some(s), Some(t), Some(omega.digits)),
        };
        DescriptorRepr { case, i, s, t, omega, dj: d.dj, k: d.k }
    }
}

impl TryFrom<DescriptorRepr> for IdealDescriptor {
    type Error = Error;

    fn try_from(r: DescriptorRepr) -> Result<Self> {
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::InvalidDescriptor(format!("case {} requires field {name}", r.case)))
        };
        let omega = || -> Result<ChainElement> {
            ChainElement::new(
                r.omega
                    .clone()
                    .ok_or_else(|| Error::InvalidDescriptor(format!("case {} requires omega", r.case)))?,
            )
        };
        let kind = match r.case {
            IdealCase::I => IdealKind::I { i: need(r.i, "i")? },
            IdealCase::II => IdealKind::II { s: need(r.s, "s")? },
            IdealCase::III => IdealKind::III { i: need(r.i, "i")?, t: need(r.t, "t")?, omega: omega()? },
            IdealCase::IV => IdealKind::IV { i: need(r.i, "i")?, t: need(r.t, "t")?, omega: omega()? },
            IdealCase::V => IdealKind::V { i: need(r.i, "i")?, s: need(r.s, "s")? },
            IdealCase::VI => IdealKind::VI {
                i: need(r.i, "i")?,
                s: need(r.s, "s")?,
                t: need(r.t, "t")?,
                omega: omega()?,
            },
        };
        let d = IdealDescriptor { kind, dj: r.dj, k: r.k };
        d.validate_shape()?;
        Ok(d)
    }
}

impl IdealDescriptor {
    pub fn new(kind: IdealKind, dj: usize, k: u32) -> Result<Self> {
        let d = IdealDescriptor { kind, dj, k };
        d.validate_shape()?;
        Ok(d)
    }

    pub fn case_of(&self) -> IdealCase {
        match self.kind {
            IdealKind::I { .. } => IdealCase::I,
            IdealKind::II { .. } => IdealCase::II,
            IdealKind::III { .. } => IdealCase::III,
            IdealKind::IV { .. } => IdealCase::IV,
            IdealKind::V { .. } => IdealCase::V,
            IdealKind::VI { .. } => IdealCase::VI,
        }
    }

    pub fn omega(&self) -> Option<&ChainElement> {
        match &self.kind {
            IdealKind::III { omega, .. } | IdealKind::IV { omega, .. } | IdealKind::VI { omega, .. } => {
                Some(omega)
            }
            _ => None,
        }
    }

    /// Precision that the case demands of omega, if the case carries one.
    pub fn omega_precision(&self) -> Option<u32> {
        match self.kind {
            IdealKind::III { i, t, .. } => Some(i - t),
            IdealKind::IV { i, .. } => Some(self.k - i),
            IdealKind::VI { s, t, .. } => Some(s - t),
            _ => None,
        }
    }

    /// Checks the index ranges and the omega shape (everything that does not
    /// depend on `m`).
    pub fn validate_shape(&self) -> Result<()> {
        let k = self.k;
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        if self.dj == 0 || k == 0 {
            return bad("dj and k must be positive".into());
        }
        let (k_i, ok) = match &self.kind {
            IdealKind::I { i } => (0, *i <= k),
            IdealKind::II { s } => (0, *s < k),
            IdealKind::III { i, t, .. } => (0, t < i && *i < k && (*t as i64) >= 2 * *i as i64 - k as i64),
            IdealKind::IV { i, t, .. } => (0, t < i && *i < k && (*t as i64) < 2 * *i as i64 - k as i64),
            IdealKind::V { i, s } => (0, s < i && *i < k),
            IdealKind::VI { i, s, t, .. } => (0, t < s && s < i && *i < k && i + s < k + t),
        };
        let _: u32 = k_i;
        if !ok {
            return bad(format!("parameters out of range for {self}"));
        }
        if let (Some(omega), Some(p)) = (self.omega(), self.omega_precision()) {
            if omega.precision() != p as usize {
                return bad(format!("omega has precision {} but case {} needs {p}", omega.precision(), self.case_of()));
            }
            if omega.digits.iter().any(|d| d.len() != self.dj) {
                return bad(format!("omega digits must have {} coefficients", self.dj));
            }
            if !omega.is_unit() {
                return bad("omega must be a unit".into());
            }
        }
        Ok(())
    }

    /// Full validation including that omega coefficients lie in `F_{2^m}`.
    pub fn validate(&self, m: u32) -> Result<()> {
        self.validate_shape()?;
        let mask = ((1u64 << m) - 1) as u32;
        if let Some(omega) = self.omega() {
            if omega.digits.iter().flatten().any(|&c| c & !mask != 0) {
                return Err(Error::InvalidDescriptor(format!("omega coefficient outside F_2^{m}")));
            }
        }
        Ok(())
    }

    pub fn zero(dj: usize, k: u32) -> Self {
        IdealDescriptor { kind: IdealKind::I { i: k }, dj, k }
    }

    pub fn full(dj: usize, k: u32) -> Self {
        IdealDescriptor { kind: IdealKind::I { i: 0 }, dj, k }
    }
}

impl fmt::Display for IdealDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |o: &ChainElement| {
            let parts: Vec<String> = o.digits.iter().map(|d| format!("{d:?}")).collect();
            parts.join(",")
        };
        match &self.kind {
            IdealKind::I { i } => write!(f, "<u^{i}>"),
            IdealKind::II { s } => write!(f, "<u^{s} f>"),
            IdealKind::III { i, t, omega } | IdealKind::IV { i, t, omega } => {
                write!(f, "<u^{i} + u^{t} f w>, w = ({})", w(omega))
            }
            IdealKind::V { i, s } => write!(f, "<u^{i}, u^{s} f>"),
            IdealKind::VI { i, s, t, omega } => write!(f, "<u^{i} + u^{t} f w, u^{s} f>, w = ({})", w(omega)),
        }
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn to_natural(v: BigInt) -> BigUint {
    v.to_biguint().expect("counting formula produced a negative value")
}

/// `|F_j| = 2^{m d_j}`.
pub fn residue_order(m: u32, dj: usize) -> BigUint {
    BigUint::one() << (m as usize * dj)
}

/// Number of case III ideals (closed form).
pub fn omega1(q: &BigUint, k: u32) -> BigUint {
    let q = BigInt::from(q.clone());
    let one = BigInt::one();
    let value = if k.is_multiple_of(2) {
        let h = k / 2;
        (q.pow(h + 1) + q.pow(h) - 2) / (&q - &one) - big(k as u64 + 1)
    } else {
        (q.pow(k.div_ceil(2)) - &one) * 2 / (&q - &one) - big(k as u64 + 1)
    };
    to_natural(value)
}

/// Number of case IV ideals: `(q - 1) sum_{i > k/2}^{k-1} (2i - k) q^{k-i-1}`.
pub fn omega2(q: &BigUint, k: u32) -> BigUint {
    let lower = k / 2 + 1;
    let sum: BigUint = (lower..k).map(|i| BigUint::from(2 * i - k) * q.pow(k - i - 1)).sum();
    (q - 1u32) * sum
}

/// `Gamma(q, k)` by its recurrence; case VI contributes `(q - 1) Gamma`.
pub fn gamma(q: &BigUint, k: u32) -> BigUint {
    let mut value = BigUint::zero();
    for rho in 4..=k {
        if rho == 4 {
            value = BigUint::one();
            continue;
        }
        let add: BigUint = (1..rho / 2).map(|s| BigUint::from(rho - 2 * s - 1) * q.pow(s - 1)).sum();
        value += add;
    }
    value
}

/// Total number of ideals of `K_j[u]/<u^k>` for residue field size `q`.
pub fn count_ideals(q: &BigUint, k: u32) -> BigUint {
    let k64 = k as u64;
    BigUint::from(1 + k64 * (k64 + 3) / 2) + omega1(q, k) + omega2(q, k) + (q - 1u32) * gamma(q, k)
}

/// `log2 |C_j|` for an ideal over `F_{2^m}`.
pub fn card_log2(desc: &IdealDescriptor, m: u32) -> u64 {
    let md = m as u64 * desc.dj as u64;
    let k = desc.k as u64;
    match desc.kind {
        IdealKind::I { i } => 2 * md * (k - i as u64),
        IdealKind::II { s } => md * (k - s as u64),
        IdealKind::III { i, .. } => 2 * md * (k - i as u64),
        IdealKind::IV { t, .. } => md * (k - t as u64),
        IdealKind::V { i, s } | IdealKind::VI { i, s, .. } => md * (2 * k - (i + s) as u64),
    }
}

/// Every ideal exactly once: by case, then `i`, `s`, `t` ascending, then
/// omega in lexicographic digit order.
pub fn enumerate_ideals(dj: usize, m: u32, k: u32) -> Result<impl Iterator<Item = IdealDescriptor>> {
    if dj == 0 || k == 0 {
        return Err(Error::InvalidParameters("dj and k must be positive".into()));
    }
    // fail fast on fields too large to enumerate
    UnitIter::new(m, dj, 1)?;
    let units = move |p: u32| UnitIter::new(m, dj, p as usize).expect("checked above");
    let d = move |kind| IdealDescriptor { kind, dj, k };
    let ki = k as i64;

    let case_i = (0..=k).map(move |i| d(IdealKind::I { i }));
    let case_ii = (0..k).map(move |s| d(IdealKind::II { s }));
    let case_iii = (1..k).flat_map(move |i| {
        (0..i).filter(move |&t| t as i64 >= 2 * i as i64 - ki).flat_map(move |t| {
            units(i - t).map(move |omega| d(IdealKind::III { i, t, omega }))
        })
    });
    let case_iv = (1..k).flat_map(move |i| {
        (0..i).filter(move |&t| (t as i64) < 2 * i as i64 - ki).flat_map(move |t| {
            units(k - i).map(move |omega| d(IdealKind::IV { i, t, omega }))
        })
    });
    let case_v = (1..k).flat_map(move |i| (0..i).map(move |s| d(IdealKind::V { i, s })));
    let case_vi = (1..k).flat_map(move |i| {
        (1..i).flat_map(move |s| {
            (0..s).filter(move |&t| i + s < k + t).flat_map(move |t| {
                units(s - t).map(move |omega| d(IdealKind::VI { i, s, t, omega }))
            })
        })
    });
    Ok(case_i.chain(case_ii).chain(case_iii).chain(case_iv).chain(case_v).chain(case_vi))
}

/// An element of `K_j[u]/<u^k>`: `k` u-adic digits, each a polynomial in
/// `x` reduced modulo `f_j^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElement {
    pub digits: Vec<Polynomial>,
}

/// The ring `K_j[u]/<u^k>` for one factor `f_j`.
#[derive(Clone, Debug)]
pub struct FactorRing {
    field: FieldSpec,
    fj: Polynomial,
    fj_sq: Polynomial,
    dj: usize,
    k: u32,
}

impl FactorRing {
    pub fn new(fj: &Polynomial, k: u32) -> Result<Self> {
        let dj = match fj.degree() {
            Some(d) if d >= 1 && fj.is_monic() => d,
            _ => return Err(Error::InvalidParameters(format!("{fj} is not a monic nonconstant factor"))),
        };
        Ok(FactorRing { field: fj.field(), fj: fj.clone(), fj_sq: fj * fj, dj, k })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn factor(&self) -> &Polynomial {
        &self.fj
    }

    pub fn dj(&self) -> usize {
        self.dj
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Dimension over `F_{2^m}`: `2 d_j k`.
    pub fn dimension(&self) -> usize {
        2 * self.dj * self.k as usize
    }

    pub fn zero(&self) -> KElement {
        KElement { digits: vec![Polynomial::zero(self.field); self.k as usize] }
    }

    /// `c(x) u^l` (zero when `l >= k`).
    pub fn monomial_u(&self, l: u32, c: &Polynomial) -> KElement {
        let mut e = self.zero();
        if l < self.k {
            e.digits[l as usize] = c.rem(&self.fj_sq);
        }
        e
    }

    pub fn add(&self, a: &KElement, b: &KElement) -> KElement {
        KElement { digits: a.digits.iter().zip(&b.digits).map(|(x, y)| x + y).collect() }
    }

    pub fn mul(&self, a: &KElement, b: &KElement) -> KElement {
        let k = self.k as usize;
        let mut out = vec![Polynomial::zero(self.field); k];
        for (i, x) in a.digits.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.digits.iter().enumerate().take(k - i) {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        KElement { digits: out.into_iter().map(|p| p.rem(&self.fj_sq)).collect() }
    }

    /// `u^t f_j w` with the digits of `w` read as polynomials of degree `< d_j`.
    pub fn shifted_factor_times(&self, t: u32, omega: &ChainElement) -> KElement {
        let mut e = self.zero();
        for l in 0..omega.precision() {
            let pos = t as usize + l;
            if pos < self.k as usize {
                e.digits[pos] = (&self.fj * &omega.digit_polynomial(self.field, l)).rem(&self.fj_sq);
            }
        }
        e
    }

    /// Coordinates over `F_{2^m}`: digit `l`, coefficient `a` at `l * 2d_j + a`.
    pub fn to_coords(&self, e: &KElement) -> Vec<u32> {
        e.digits.iter().flat_map(|p| p.padded(2 * self.dj)).collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> KElement {
        KElement {
            digits: coords.chunks(2 * self.dj).map(|c| Polynomial::from_raw(self.field, c.to_vec())).collect(),
        }
    }

    /// The ideal generated by `gens` as an `F_{2^m}`-subspace: the span of
    /// `x^a u^b g`.
    pub fn ideal_span(&self, gens: &[KElement]) -> Echelon {
        let mut span = Echelon::new(self.field, self.dimension());
        for g in gens {
            for b in 0..self.k {
                for a in 0..2 * self.dj {
                    let mono = self.monomial_u(b, &Polynomial::monomial(self.field, a, 1));
                    span.insert(self.to_coords(&self.mul(&mono, g)));
                }
            }
        }
        span
    }
}

/// Concrete generators in `K_j[u]/<u^k>` realizing a descriptor.
pub fn generators(desc: &IdealDescriptor, fj: &Polynomial) -> Result<Vec<KElement>> {
    let ring = FactorRing::new(fj, desc.k)?;
    if ring.dj != desc.dj {
        return Err(Error::InvalidParameters(format!("{fj} has degree {} but descriptor has dj = {}", ring.dj, desc.dj)));
    }
    desc.validate(fj.field().m())?;
    Ok(descriptor_generators(&ring, desc))
}

pub(crate) fn descriptor_generators(ring: &FactorRing, desc: &IdealDescriptor) -> Vec<KElement> {
    let one = Polynomial::one(ring.field);
    let u_pow = |l: u32| ring.monomial_u(l, &one);
    let f_u_pow = |l: u32| ring.monomial_u(l, &ring.fj);
    match &desc.kind {
        IdealKind::I { i } => vec![u_pow(*i)],
        IdealKind::II { s } => vec![f_u_pow(*s)],
        IdealKind::III { i, t, omega } | IdealKind::IV { i, t, omega } => {
            vec![ring.add(&u_pow(*i), &ring.shifted_factor_times(*t, omega))]
        }
        IdealKind::V { i, s } => vec![u_pow(*i), f_u_pow(*s)],
        IdealKind::VI { i, s, t, omega } => {
            vec![ring.add(&u_pow(*i), &ring.shifted_factor_times(*t, omega)), f_u_pow(*s)]
        }
    }
}

/// One run of consecutive descriptors in enumeration order: fixed indices
/// and, for omega-carrying cases, the omega precision.
#[derive(Clone, Copy, Debug)]
struct Block {
    case: IdealCase,
    i: u32,
    s: u32,
    t: u32,
    precision: Option<u32>,
}

impl Block {
    fn size(&self, q: &BigUint) -> BigUint {
        match self.precision {
            None => BigUint::one(),
            Some(p) => (q - 1u32) * q.pow(p - 1),
        }
    }

    fn descriptor(&self, omega: Option<ChainElement>, dj: usize, k: u32) -> IdealDescriptor {
        let (i, s, t) = (self.i, self.s, self.t);
        let kind = match self.case {
            IdealCase::I => IdealKind::I { i },
            IdealCase::II => IdealKind::II { s },
            IdealCase::III => IdealKind::III { i, t, omega: omega.expect("omega") },
            IdealCase::IV => IdealKind::IV { i, t, omega: omega.expect("omega") },
            IdealCase::V => IdealKind::V { i, s },
            IdealCase::VI => IdealKind::VI { i, s, t, omega: omega.expect("omega") },
        };
        IdealDescriptor { kind, dj, k }
    }
}

fn blocks(k: u32) -> Vec<Block> {
    let ki = k as i64;
    let plain = |case, i, s| Block { case, i, s, t: 0, precision: None };
    let mut out: Vec<Block> = (0..=k).map(|i| plain(IdealCase::I, i, 0)).collect();
    out.extend((0..k).map(|s| plain(IdealCase::II, 0, s)));
    for i in 1..k {
        for t in (0..i).filter(|&t| t as i64 >= 2 * i as i64 - ki) {
            out.push(Block { case: IdealCase::III, i, s: 0, t, precision: Some(i - t) });
        }
    }
    for i in 1..k {
        for t in (0..i).filter(|&t| (t as i64) < 2 * i as i64 - ki) {
            out.push(Block { case: IdealCase::IV, i, s: 0, t, precision: Some(k - i) });
        }
    }
    for i in 1..k {
        out.extend((0..i).map(|s| plain(IdealCase::V, i, s)));
    }
    for i in 1..k {
        for s in 1..i {
            for t in (0..s).filter(|&t| i + s < k + t) {
                out.push(Block { case: IdealCase::VI, i, s, t, precision: Some(s - t) });
            }
        }
    }
    out
}

/// The descriptor at position `index` of [`enumerate_ideals`], without
/// walking the stream.
pub fn nth_ideal(dj: usize, m: u32, k: u32, index: &BigUint) -> Result<IdealDescriptor> {
    if dj == 0 || k == 0 {
        return Err(Error::InvalidParameters("dj and k must be positive".into()));
    }
    UnitIter::new(m, dj, 1)?;
    let q = residue_order(m, dj);
    let mut rest = index.clone();
    for block in blocks(k) {
        let size = block.size(&q);
        if rest >= size {
            rest -= size;
            continue;
        }
        let omega = block.precision.map(|p| {
            let tail = q.pow(p - 1);
            let mut indices = vec![0u64; p as usize];
            indices[0] = 1 + (&rest / &tail).to_u64().expect("digit fits");
            let mut low = &rest % &tail;
            for slot in indices[1..].iter_mut().rev() {
                *slot = (&low % &q).to_u64().expect("digit fits");
                low /= &q;
            }
            ChainElement::from_indices(m, dj, &indices)
        });
        return Ok(block.descriptor(omega, dj, k));
    }
    Err(Error::InvalidParameters(format!("index {index} exceeds the number of ideals")))
}

/// Number of descriptors per case, in `I..VI` order, by enumeration.
pub fn case_counts(dj: usize, m: u32, k: u32) -> Result<[u64; 6]> {
    let mut counts = [0u64; 6];
    for d in enumerate_ideals(dj, m, k)? {
        counts[d.case_of() as usize] += 1;
    }
    Ok(counts)
}

/// `count_ideals` as a `u64` when it fits.
pub fn count_ideals_u64(q: u64, k: u32) -> Option<u64> {
    count_ideals(&BigUint::from(q), k).to_u64()
}
