//! Exhaustive ground truth for small parameters.
//!
//! Everything here works on `F_2`-linear structure alone: ring elements and
//! vectors are packed into `u32` words (XOR is addition) and sets closed
//! under addition are stored as canonical reduced `F_2` bases. Ideals are
//! found by saturating principal ideals under sums, and duals by scanning
//! the whole ambient space.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::chain_ideals::{card_log2, count_ideals, enumerate_ideals, generators, FactorRing, IdealDescriptor};
use crate::codes::{dual_code, enumerate_codes, expand_codewords, selfdual_enumerate, Codeword, CyclicCode};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Polynomial;

/// Largest ring handled by [`SmallRing`], in bits.
pub const RING_GUARD_LOG2: usize = 16;
/// Largest ambient space `R^{2n}` scanned by [`brute_dual`], in bits.
pub const SPACE_GUARD_LOG2: u64 = 24;

/// Canonical reduced basis of an `F_2`-subspace of `u32` words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XorBasis {
    // sorted by leading bit, descending; each leading bit cleared elsewhere
    rows: Vec<u32>,
}

impl XorBasis {
    pub fn new() -> Self {
        XorBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn reduce(&self, mut v: u32) -> u32 {
        for &r in &self.rows {
            let lead = 31 - r.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    pub fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let lead = 31 - v.leading_zeros();
        for r in self.rows.iter_mut() {
            if *r >> lead & 1 == 1 {
                *r ^= v;
            }
        }
        let at = self.rows.partition_point(|&r| r.leading_zeros() < v.leading_zeros());
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, other: &XorBasis) -> XorBasis {
        let mut out = self.clone();
        for &r in &other.rows {
            out.insert(r);
        }
        out
    }

    /// All `2^rank` elements, sorted.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = vec![0u32];
        for &r in &self.rows {
            let more: Vec<u32> = out.iter().map(|&x| x ^ r).collect();
            out.extend(more);
        }
        out.sort_unstable();
        out
    }
}

/// `K_j[u]/<u^k>` with every element packed as `2 d_j k` coefficients of
/// `m` bits (digit `l`, power `a` of `x` at slot `l 2d_j + a`).
#[derive(Clone, Debug)]
pub struct SmallRing {
    base: FieldSpec,
    fj_sq: Vec<u32>,
    width: usize,
    k: usize,
}

impl SmallRing {
    pub fn new(fj: &Polynomial, k: u32) -> Result<Self> {
        let base = fj.field();
        let dj = fj.degree().filter(|&d| d >= 1).ok_or_else(|| Error::InvalidParameters("factor must be nonconstant".into()))?;
        let bits = 2 * base.m() as usize * dj * k as usize;
        if bits > RING_GUARD_LOG2 {
            return Err(Error::OutOfOracleRange(format!(
                "ring K[u]/<u^{k}> for {fj} has 2^{bits} elements (guard 2^{RING_GUARD_LOG2})"
            )));
        }
        let fj_sq = (fj * fj).coeffs().to_vec();
        Ok(SmallRing { base, fj_sq, width: 2 * dj, k: k as usize })
    }

    pub fn size_log2(&self) -> usize {
        self.width * self.k * self.base.m() as usize
    }

    pub fn len(&self) -> usize {
        1 << self.size_log2()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn unpack(&self, e: u32) -> Vec<Vec<u32>> {
        let m = self.base.m() as usize;
        let mask = self.base.mask();
        (0..self.k)
            .map(|l| (0..self.width).map(|a| (e >> (m * (l * self.width + a))) & mask).collect())
            .collect()
    }

    fn pack(&self, digits: &[Vec<u32>]) -> u32 {
        let m = self.base.m() as usize;
        let mut e = 0u32;
        for (l, d) in digits.iter().enumerate() {
            for (a, &c) in d.iter().enumerate() {
                e |= c << (m * (l * self.width + a));
            }
        }
        e
    }

    /// `a * b mod f_j^2` on coefficient vectors of length `2 d_j`.
    fn mul_x(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = &self.base;
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] ^= f.mul_bits(x, y);
            }
        }
        let deg = self.fj_sq.len() - 1;
        let lead_inv = f.inv_bits(self.fj_sq[deg]).expect("nonzero leading coefficient");
        for top in (deg..prod.len()).rev() {
            let c = f.mul_bits(prod[top], lead_inv);
            if c != 0 {
                for (i, &g) in self.fj_sq.iter().enumerate() {
                    prod[top - deg + i] ^= f.mul_bits(c, g);
                }
            }
        }
        prod.truncate(self.width);
        prod
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.unpack(a), self.unpack(b));
        let mut out = vec![vec![0u32; self.width]; self.k];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate().take(self.k - i) {
                for (o, p) in out[i + j].iter_mut().zip(self.mul_x(x, y)) {
                    *o ^= p;
                }
            }
        }
        self.pack(&out)
    }

    /// `F_2`-basis of the whole ring: single bits.
    fn unit_vectors(&self) -> impl Iterator<Item = u32> {
        (0..self.size_log2()).map(|b| 1u32 << b)
    }

    /// The ideal `R g`: the `F_2`-span of `b g` over single-bit `b`.
    pub fn principal(&self, g: u32) -> XorBasis {
        let mut out = XorBasis::new();
        for b in self.unit_vectors() {
            out.insert(self.mul(b, g));
        }
        out
    }

    /// Whether an additively closed set is also closed under multiplication.
    pub fn is_ideal(&self, set: &XorBasis) -> bool {
        set.rows().iter().all(|&r| self.unit_vectors().all(|b| set.contains(self.mul(b, r))))
    }
}

/// All ideals of the ring, as canonical bases sorted by (size, basis).
pub fn brute_ideals(ring: &SmallRing) -> Result<Vec<XorBasis>> {
    let mut principal: BTreeSet<XorBasis> = BTreeSet::new();
    for g in 0..ring.len() as u32 {
        principal.insert(ring.principal(g));
    }
    let principal: Vec<XorBasis> = principal.into_iter().collect();
    // pairs of generators, then saturation under sums
    let mut all: BTreeSet<XorBasis> = principal.iter().cloned().collect();
    for (a_idx, a) in principal.iter().enumerate() {
        for b in &principal[a_idx + 1..] {
            all.insert(a.sum(b));
        }
    }
    let mut frontier: Vec<XorBasis> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for p in &principal {
                let s = a.sum(p);
                if !all.contains(&s) {
                    all.insert(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<XorBasis> = all.into_iter().collect();
    out.sort_by_key(|b| (b.rank(), b.clone()));
    Ok(out)
}

/// The ideal named by `desc`, packed like [`SmallRing`] elements.
pub fn descriptor_ideal(ring: &SmallRing, desc: &IdealDescriptor, fj: &Polynomial) -> Result<XorBasis> {
    let gens = generators(desc, fj)?;
    let fr = FactorRing::new(fj, desc.k)?;
    let m = ring.base.m() as usize;
    let mut out = XorBasis::new();
    for g in &gens {
        let packed = pack_coords(&fr.to_coords(g), m);
        for b in ring.unit_vectors() {
            out.insert(ring.mul(b, packed));
        }
    }
    Ok(out)
}

fn pack_coords(coords: &[u32], m: usize) -> u32 {
    coords.iter().enumerate().fold(0u32, |acc, (i, &c)| acc | c << (m * i))
}

/// Outcome of comparing the classification against exhaustive search.
#[derive(Clone, Debug, Serialize)]
pub struct CensusOutcome {
    pub brute: usize,
    pub descriptors: usize,
    pub formula: String,
    pub bijective: bool,
    pub sizes_match: bool,
}

impl CensusOutcome {
    pub fn pass(&self) -> bool {
        self.bijective
            && self.sizes_match
            && self.brute == self.descriptors
            && self.formula == self.brute.to_string()
    }
}

/// Brute-force ideals versus descriptor ideals for one factor.
pub fn ideal_census(fj: &Polynomial, k: u32) -> Result<CensusOutcome> {
    let ring = SmallRing::new(fj, k)?;
    let brute = brute_ideals(&ring)?;
    let dj = fj.degree().expect("nonconstant");
    let m = fj.field().m();
    let mut by_descriptor: HashMap<XorBasis, usize> = HashMap::new();
    let mut descriptors = 0;
    let mut sizes_match = true;
    for desc in enumerate_ideals(dj, m, k)? {
        descriptors += 1;
        let ideal = descriptor_ideal(&ring, &desc, fj)?;
        sizes_match &= ideal.rank() as u64 == card_log2(&desc, m) && ring.is_ideal(&ideal);
        *by_descriptor.entry(ideal).or_default() += 1;
    }
    let bijective = by_descriptor.values().all(|&c| c == 1)
        && by_descriptor.len() == brute.len()
        && brute.iter().all(|b| by_descriptor.contains_key(b));
    let q = crate::chain_ideals::residue_order(m, dj);
    Ok(CensusOutcome {
        brute: brute.len(),
        descriptors,
        formula: count_ideals(&q, k).to_string(),
        bijective,
        sizes_match,
    })
}

/// Packs a codeword of `R^{2n}` into `2n k m` bits.
pub fn pack_codeword(w: &Codeword, m: u32) -> u32 {
    let k = w.entries.first().map_or(0, Vec::len);
    let mut out = 0u32;
    for (i, e) in w.entries.iter().enumerate() {
        for (l, &c) in e.iter().enumerate() {
            out |= c << (m as usize * (i * k + l));
        }
    }
    out
}

pub fn unpack_codeword(v: u32, two_n: usize, k: u32, m: u32) -> Codeword {
    let mask = (1u32 << m) - 1;
    Codeword {
        entries: (0..two_n)
            .map(|i| (0..k as usize).map(|l| (v >> (m as usize * (i * k as usize + l))) & mask).collect())
            .collect(),
    }
}

fn check_space(decomp: &Decomposition) -> Result<()> {
    let bits = decomp.space_log2();
    if bits > SPACE_GUARD_LOG2 {
        return Err(Error::OutOfOracleRange(format!(
            "space R^{} has 2^{bits} elements (guard 2^{SPACE_GUARD_LOG2})",
            decomp.two_n()
        )));
    }
    Ok(())
}

/// Codewords of `c` as an `F_2`-subspace of packed words.
pub fn code_set(c: &CyclicCode) -> Result<XorBasis> {
    check_space(c.decomposition())?;
    let m = c.decomposition().field.m();
    let mut out = XorBasis::new();
    for w in expand_codewords(c, None)? {
        out.insert(pack_codeword(&w, m));
    }
    Ok(out)
}

/// `[a, b]` for packed vectors, packed as `k m` bits.
fn packed_inner(field: FieldSpec, a: u32, b: u32, two_n: usize, k: u32) -> u32 {
    let m = field.m();
    let wa = unpack_codeword(a, two_n, k, m);
    let wb = unpack_codeword(b, two_n, k, m);
    let p = crate::codes::inner_product(field, &wa, &wb);
    p.iter().enumerate().fold(0u32, |acc, (l, &c)| acc | c << (m as usize * l))
}

/// The Euclidean dual by scanning all of `R^{2n}` and keeping every vector
/// orthogonal to the codewords of `c`.
pub fn brute_dual(c: &CyclicCode) -> Result<XorBasis> {
    let d = c.decomposition();
    check_space(d)?;
    let (two_n, k, field) = (d.two_n(), d.k, d.field);
    let bits = d.space_log2() as usize;
    let code = code_set(c)?;
    // the form is F_2-bilinear, so each codeword basis vector gives a linear
    // functional; tabulate it on single bits and scan in Gray-code order
    let table: Vec<Vec<u32>> = (0..bits)
        .map(|b| code.rows().iter().map(|&r| packed_inner(field, 1 << b, r, two_n, k)).collect())
        .collect();
    let mut values = vec![0u32; code.rank()];
    let mut out = XorBasis::new();
    let mut kept: u64 = 0;
    let mut v = 0u32;
    for step in 0..(1u64 << bits) {
        if step > 0 {
            let b = step.trailing_zeros() as usize;
            v ^= 1 << b;
            for (x, t) in values.iter_mut().zip(&table[b]) {
                *x ^= t;
            }
        }
        if values.iter().all(|&x| x == 0) {
            kept += 1;
            out.insert(v);
        }
    }
    if kept != 1u64 << out.rank() {
        return Err(Error::Internal("orthogonal vectors do not form a subspace".into()));
    }
    Ok(out)
}

/// Every codeword of `a` against every codeword of `b`.
pub fn cross_products_vanish(field: FieldSpec, a: &XorBasis, b: &XorBasis, two_n: usize, k: u32) -> bool {
    let (ea, eb) = (a.elements(), b.elements());
    ea.iter().all(|&x| eb.iter().all(|&y| packed_inner(field, x, y, two_n, k) == 0))
}

/// One line of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub m: u32,
    pub n: usize,
    pub k: u32,
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn check(name: &str, params: String, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check { name: name.into(), params, pass: expected == actual, expected, actual }
}

/// Full oracle suite for one parameter set: ideal census per factor, dual
/// agreement and orthogonality for every code, and the self-dual census.
pub fn verify(decomp: &Arc<Decomposition>) -> Result<VerificationReport> {
    check_space(decomp)?;
    for j in 0..decomp.r() {
        SmallRing::new(decomp.factor(j), decomp.k)?;
    }
    let d = decomp;
    let (m, n, k) = (d.field.m(), d.n, d.k);
    let mut checks = Vec::new();

    let mut seen_degrees = BTreeSet::new();
    for j in 0..d.r() {
        if !seen_degrees.insert(d.degree(j)) {
            continue;
        }
        let f = d.factor(j);
        let out = ideal_census(f, k)?;
        let params = format!("f={f}, k={k}");
        checks.push(check("ideal count (brute vs formula)", params.clone(), &out.formula, out.brute));
        checks.push(check("ideal count (brute vs descriptors)", params.clone(), out.brute, out.descriptors));
        checks.push(check("descriptor ideals biject with brute ideals", params.clone(), true, out.bijective));
        checks.push(check("descriptor ideal sizes", params, true, out.sizes_match));
    }

    let params = format!("m={m}, n={n}, k={k}");
    let (mut total, mut agree, mut orth, mut brute_selfdual) = (0u64, 0u64, 0u64, BTreeSet::new());
    for c in enumerate_codes(d)? {
        total += 1;
        let table = dual_code(&c)?;
        let brute = brute_dual(&c)?;
        let table_set = code_set(&table)?;
        if brute == table_set {
            agree += 1;
        }
        if cross_products_vanish(d.field, &code_set(&c)?, &table_set, d.two_n(), k) {
            orth += 1;
        }
        if brute == code_set(&c)? {
            brute_selfdual.insert(c.to_json());
        }
    }
    checks.push(check("brute dual equals table dual", params.clone(), total, agree));
    checks.push(check("code and dual are orthogonal", params.clone(), total, orth));
    let census: BTreeSet<String> = selfdual_enumerate(d)?.map(|c| c.to_json()).collect();
    checks.push(check("self-dual census (brute vs enumeration)", params.clone(), brute_selfdual.len(), census.len()));
    checks.push(check("self-dual census sets agree", params, true, census == brute_selfdual));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport { m, n, k, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_poly(s: &str) -> Polynomial {
        Polynomial::parse_binary(FieldSpec::binary(), s).unwrap()
    }

    #[test]
    fn xor_basis_is_canonical() {
        let mut a = XorBasis::new();
        for v in [0b110, 0b011, 0b101] {
            a.insert(v);
        }
        let mut b = XorBasis::new();
        for v in [0b101, 0b110] {
            b.insert(v);
        }
        assert_eq!(a, b);
        assert_eq!(a.elements(), vec![0, 0b011, 0b101, 0b110]);
    }

    #[test]
    fn small_ring_counts() {
        let f = f2_poly("x+1");
        let ring = SmallRing::new(&f, 2).unwrap();
        let ideals = brute_ideals(&ring).unwrap();
        assert_eq!(ideals.len(), 7);
        assert_eq!(ideals.first().unwrap().rank(), 0);
        assert_eq!(ideals.last().unwrap().rank(), ring.size_log2());
        assert_eq!(brute_ideals(&SmallRing::new(&f, 3).unwrap()).unwrap().len(), 13);
    }

    #[test]
    fn ring_guard() {
        let f = f2_poly("x^3+x+1");
        assert!(matches!(SmallRing::new(&f, 4), Err(Error::OutOfOracleRange(_))));
    }

    #[test]
    fn multiplication_matches_factor_ring() {
        let f = f2_poly("x^2+x+1");
        let ring = SmallRing::new(&f, 2).unwrap();
        let fr = FactorRing::new(&f, 2).unwrap();
        for a in (0..ring.len() as u32).step_by(7) {
            for b in (0..ring.len() as u32).step_by(11) {
                let ea = fr.from_coords(&unpack_flat(a, 8));
                let eb = fr.from_coords(&unpack_flat(b, 8));
                assert_eq!(pack_coords(&fr.to_coords(&fr.mul(&ea, &eb)), 1), ring.mul(a, b));
            }
        }
    }

    fn unpack_flat(v: u32, width: usize) -> Vec<u32> {
        (0..width).map(|i| (v >> i) & 1).collect()
    }

    #[test]
    fn census_small() {
        assert!(ideal_census(&f2_poly("x+1"), 2).unwrap().pass());
        assert!(ideal_census(&f2_poly("x+1"), 4).unwrap().pass());
    }

    #[test]
    fn dual_of_zero_is_everything() {
        let d = Arc::new(Decomposition::new(FieldSpec::binary(), 1, 2).unwrap());
        let dual = brute_dual(&CyclicCode::zero(d.clone())).unwrap();
        assert_eq!(dual.rank() as u64, d.space_log2());
    }

    #[test]
    fn verify_guard() {
        let d = Arc::new(Decomposition::new(FieldSpec::binary(), 7, 4).unwrap());
        let err = verify(&d).unwrap_err();
        assert!(err.to_string().contains("out of oracle range"), "{err}");
    }
}
