//! Cyclic codes `C = sum_j eps_j C_j` named by one ideal descriptor per
//! factor: counting, duals, the self-dual census and codeword expansion.

use std::sync::Arc;

use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain_ideals::{
    count_ideals, descriptor_generators, enumerate_ideals, nth_ideal, ChainElement, FactorRing, IdealCase,
    IdealDescriptor, IdealKind,
};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Echelon;
use crate::poly::Polynomial;

/// Codes with more than `2^EXPANSION_GUARD_LOG2` codewords are only
/// expanded under an explicit limit.
pub const EXPANSION_GUARD_LOG2: u64 = 24;

/// A vector of `R^{2n}`: entry `i` is the coefficient of `x^i`, given by its
/// `k` u-adic digits in `F_{2^m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codeword {
    pub entries: Vec<Vec<u32>>,
}

impl Codeword {
    pub fn zero(len: usize, k: u32) -> Self {
        Codeword { entries: vec![vec![0; k as usize]; len] }
    }

    fn from_flat(flat: &[u32], k: u32) -> Self {
        Codeword { entries: flat.chunks(k as usize).map(<[u32]>::to_vec).collect() }
    }
}

/// Product in `R = F_{2^m}[u]/<u^k>` of two digit vectors.
pub fn ring_mul(field: FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let k = a.len();
    let mut out = vec![0u32; k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(k - i) {
            out[i + j] ^= field.mul_bits(x, y);
        }
    }
    out
}

/// Euclidean form `[a, b] = sum_i a_i b_i` in `R`.
pub fn inner_product(field: FieldSpec, a: &Codeword, b: &Codeword) -> Vec<u32> {
    let k = a.entries.first().map_or(0, Vec::len);
    let mut acc = vec![0u32; k];
    for (x, y) in a.entries.iter().zip(&b.entries) {
        for (s, p) in acc.iter_mut().zip(ring_mul(field, x, y)) {
            *s ^= p;
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct CyclicCode {
    decomp: Arc<Decomposition>,
    parts: Vec<IdealDescriptor>,
}

impl PartialEq for CyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.decomp.field == other.decomp.field
            && self.decomp.n == other.decomp.n
            && self.decomp.k == other.decomp.k
            && self.parts == other.parts
    }
}

impl Eq for CyclicCode {}

impl std::hash::Hash for CyclicCode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

/// JSON form `{"m","n","k","parts"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeRepr {
    pub m: u32,
    pub n: usize,
    pub k: u32,
    pub parts: Vec<IdealDescriptor>,
}

impl Serialize for CyclicCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl CyclicCode {
    pub fn new(decomp: Arc<Decomposition>, parts: Vec<IdealDescriptor>) -> Result<Self> {
        if parts.len() != decomp.r() {
            return Err(Error::InvalidCode(format!("expected {} parts, got {}", decomp.r(), parts.len())));
        }
        for (j, p) in parts.iter().enumerate() {
            if p.dj != decomp.degree(j) || p.k != decomp.k {
                return Err(Error::InvalidCode(format!(
                    "part {j} has (dj, k) = ({}, {}), expected ({}, {})",
                    p.dj,
                    p.k,
                    decomp.degree(j),
                    decomp.k
                )));
            }
            p.validate(decomp.field.m()).map_err(|e| Error::InvalidCode(format!("part {j}: {e}")))?;
        }
        Ok(CyclicCode { decomp, parts })
    }

    pub fn zero(decomp: Arc<Decomposition>) -> Self {
        let parts = (0..decomp.r()).map(|j| IdealDescriptor::zero(decomp.degree(j), decomp.k)).collect();
        CyclicCode { decomp, parts }
    }

    pub fn full(decomp: Arc<Decomposition>) -> Self {
        let parts = (0..decomp.r()).map(|j| IdealDescriptor::full(decomp.degree(j), decomp.k)).collect();
        CyclicCode { decomp, parts }
    }

    pub fn decomposition(&self) -> &Arc<Decomposition> {
        &self.decomp
    }

    pub fn parts(&self) -> &[IdealDescriptor] {
        &self.parts
    }

    pub fn to_repr(&self) -> CodeRepr {
        CodeRepr { m: self.decomp.field.m(), n: self.decomp.n, k: self.decomp.k, parts: self.parts.clone() }
    }

    pub fn from_repr(repr: CodeRepr, decomp: Arc<Decomposition>) -> Result<Self> {
        if (repr.m, repr.n, repr.k) != (decomp.field.m(), decomp.n, decomp.k) {
            return Err(Error::InvalidCode(format!(
                "code is for (m, n, k) = ({}, {}, {}) but parameters are ({}, {}, {})",
                repr.m,
                repr.n,
                repr.k,
                decomp.field.m(),
                decomp.n,
                decomp.k
            )));
        }
        CyclicCode::new(decomp, repr.parts)
    }

    pub fn from_json(text: &str, decomp: Arc<Decomposition>) -> Result<Self> {
        CyclicCode::from_repr(serde_json::from_str(text)?, decomp)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("code serializes")
    }

    /// `log2 |C| = sum_j card_log2(C_j)`.
    pub fn log2_size(&self) -> u64 {
        let m = self.decomp.field.m();
        self.parts.iter().map(|p| crate::chain_ideals::card_log2(p, m)).sum()
    }

    pub fn dual(&self) -> Result<CyclicCode> {
        dual_code(self)
    }

    pub fn is_self_dual(&self) -> Result<bool> {
        Ok(self.dual()? == *self)
    }

    fn factor_ring(&self, j: usize) -> FactorRing {
        FactorRing::new(self.decomp.factor(j), self.decomp.k).expect("factors are monic")
    }

    /// `F_{2^m}`-basis of the code in `R^{2n}`; coordinate `i k + l` holds
    /// digit `l` of entry `i`.
    pub fn basis(&self) -> Echelon {
        let d = &self.decomp;
        let (two_n, k) = (d.two_n(), d.k as usize);
        let mut basis = Echelon::new(d.field, two_n * k);
        for (j, part) in self.parts.iter().enumerate() {
            let ring = self.factor_ring(j);
            let span = ring.ideal_span(&descriptor_generators(&ring, part));
            for row in span.rows() {
                let elem = ring.from_coords(row);
                let mut flat = vec![0u32; two_n * k];
                for (l, digit) in elem.digits.iter().enumerate() {
                    let lifted = (&d.idempotents[j] * digit).reduce_cyclic(two_n);
                    for (i, &c) in lifted.coeffs().iter().enumerate() {
                        flat[i * k + l] = c;
                    }
                }
                basis.insert(flat);
            }
        }
        basis
    }

    /// Membership by projecting `w` onto every `eps_j` component.
    pub fn contains(&self, w: &Codeword) -> Result<bool> {
        let d = &self.decomp;
        let k = d.k as usize;
        if w.entries.len() != d.two_n() || w.entries.iter().any(|e| e.len() != k) {
            return Err(Error::InvalidParameters(format!("codeword must have {} entries of {k} digits", d.two_n())));
        }
        let columns: Vec<Polynomial> = (0..k)
            .map(|l| Polynomial::from_coeffs(d.field, w.entries.iter().map(|e| e[l]).collect()))
            .collect::<Result<_>>()?;
        for (j, part) in self.parts.iter().enumerate() {
            let ring = self.factor_ring(j);
            let f_sq = d.factor(j) * d.factor(j);
            let coords: Vec<u32> =
                columns.iter().flat_map(|c| c.rem(&f_sq).padded(2 * ring.dj())).collect();
            if !ring.ideal_span(&descriptor_generators(&ring, part)).contains(&coords) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Uniform code: each part drawn uniformly from its ideal list.
    pub fn random<G: Rng + ?Sized>(decomp: &Arc<Decomposition>, rng: &mut G) -> Result<Self> {
        let m = decomp.field.m();
        let parts = (0..decomp.r())
            .map(|j| {
                let total = count_ideals(&decomp.residue_order(j), decomp.k);
                nth_ideal(decomp.degree(j), m, decomp.k, &rng.gen_biguint_below(&total))
            })
            .collect::<Result<_>>()?;
        Ok(CyclicCode { decomp: decomp.clone(), parts })
    }
}

/// `count` uniform codes from a ChaCha stream seeded with `seed`.
pub fn sample_codes(decomp: &Arc<Decomposition>, seed: u64, count: usize) -> Result<Vec<CyclicCode>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| CyclicCode::random(decomp, &mut rng)).collect()
}

/// Number of cyclic codes of length `2n` over `F_{2^m}[u]/<u^k>`.
pub fn code_count(m: u32, n: usize, k: u32) -> Result<BigUint> {
    let decomp = Decomposition::new(FieldSpec::default_for(m)?, n, k)?;
    Ok(code_count_for(&decomp))
}

pub fn code_count_for(decomp: &Decomposition) -> BigUint {
    (0..decomp.r()).map(|j| count_ideals(&decomp.residue_order(j), decomp.k)).product()
}

/// Maps each digit `w_l` to `e_j x^{2n-d_j} w_l(x^{-1}) mod f_{rho(j)}`.
fn omega_prime(d: &Decomposition, j: usize, omega: &ChainElement) -> ChainElement {
    let digits = omega.digits().iter().map(|digit| reflect_digit(d, j, digit)).collect();
    ChainElement::new(digits).expect("digits share the factor degree")
}

fn reflect_digit(d: &Decomposition, j: usize, digit: &[u32]) -> Vec<u32> {
    let two_n = d.two_n();
    let dj = d.degree(j);
    let e = d.e[j].bits();
    let mut acc = Polynomial::zero(d.field);
    for (a, &c) in digit.iter().enumerate() {
        if c != 0 {
            let exp = (2 * two_n - a - dj) % two_n;
            acc = &acc + &Polynomial::monomial(d.field, exp, d.field.mul_bits(c, e));
        }
    }
    acc.rem(d.factor(d.rho[j])).padded(dj)
}

/// The dual component `D_{rho(j)}` of `C_j`, normalized to a descriptor.
pub fn dual_part(d: &Decomposition, j: usize, desc: &IdealDescriptor) -> Result<IdealDescriptor> {
    let k = desc.k;
    let w = |o: &ChainElement| omega_prime(d, j, o);
    let kind = match &desc.kind {
        IdealKind::I { i } => IdealKind::I { i: k - i },
        IdealKind::II { s } if *s == 0 => IdealKind::II { s: 0 },
        IdealKind::II { s } => IdealKind::V { i: k - s, s: 0 },
        IdealKind::III { i, t, omega } => IdealKind::III { i: k - i, t: k + t - 2 * i, omega: w(omega) },
        IdealKind::IV { i, t, omega } if *t == 0 => IdealKind::IV { i: *i, t: 0, omega: w(omega) },
        IdealKind::IV { i, t, omega } => IdealKind::VI { i: i - t, s: k - i, t: 0, omega: w(omega) },
        IdealKind::V { i, s } if *s == 0 => IdealKind::II { s: k - i },
        IdealKind::V { i, s } => IdealKind::V { i: k - s, s: k - i },
        IdealKind::VI { i, s, t, omega } if *t == 0 => IdealKind::IV { i: k - s, t: k - i - s, omega: w(omega) },
        IdealKind::VI { i, s, t, omega } => {
            IdealKind::VI { i: k - s, s: k - i, t: k + t - i - s, omega: w(omega) }
        }
    };
    IdealDescriptor::new(kind, d.degree(d.rho[j]), k)
        .map_err(|e| Error::Internal(format!("dual of {desc} at slot {j}: {e}")))
}

/// Euclidean dual, computed component by component.
pub fn dual_code(c: &CyclicCode) -> Result<CyclicCode> {
    let d = &c.decomp;
    let mut parts: Vec<Option<IdealDescriptor>> = vec![None; d.r()];
    for (j, part) in c.parts.iter().enumerate() {
        parts[d.rho[j]] = Some(dual_part(d, j, part)?);
    }
    let parts = parts.into_iter().map(|p| p.expect("rho is a permutation")).collect();
    Ok(CyclicCode { decomp: d.clone(), parts })
}

/// `(log2 |C|, log2 |C^perp|)`; the two always add up to `2n m k`.
pub fn euclidean_size_check(c: &CyclicCode) -> Result<(u64, u64)> {
    let dual = dual_code(c)?;
    let pair = (c.log2_size(), dual.log2_size());
    if pair.0 + pair.1 != c.decomp.space_log2() {
        return Err(Error::Internal(format!("sizes {pair:?} do not complement to {}", c.decomp.space_log2())));
    }
    Ok(pair)
}

/// Every codeword once; errors above `2^24` codewords unless `limit` is set.
pub fn expand_codewords(c: &CyclicCode, limit: Option<u64>) -> Result<impl Iterator<Item = Codeword>> {
    let basis = c.basis();
    let log2 = basis.rank() as u64 * c.decomp.field.m() as u64;
    if limit.is_none() && log2 > EXPANSION_GUARD_LOG2 {
        return Err(Error::SizeGuard(format!(
            "code has 2^{log2} codewords (guard 2^{EXPANSION_GUARD_LOG2}); pass a limit"
        )));
    }
    let k = c.decomp.k;
    let take = limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX));
    Ok(basis.into_span().take(take).map(move |v| Codeword::from_flat(&v, k)))
}

type Source<T> = Box<dyn Fn() -> Box<dyn Iterator<Item = T>>>;

/// Cartesian product of restartable streams, first slot most significant.
struct Product<T> {
    sources: Vec<Source<T>>,
    iters: Vec<Box<dyn Iterator<Item = T>>>,
    current: Vec<T>,
    state: ProductState,
}

enum ProductState {
    Fresh,
    Running,
    Done,
}

impl<T: Clone> Product<T> {
    fn new(sources: Vec<Source<T>>) -> Self {
        Product { sources, iters: Vec::new(), current: Vec::new(), state: ProductState::Fresh }
    }
}

impl<T: Clone> Iterator for Product<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        match self.state {
            ProductState::Done => return None,
            ProductState::Fresh => {
                self.state = ProductState::Running;
                for src in &self.sources {
                    let mut it = src();
                    match it.next() {
                        Some(v) => self.current.push(v),
                        None => {
                            self.state = ProductState::Done;
                            return None;
                        }
                    }
                    self.iters.push(it);
                }
                return Some(self.current.clone());
            }
            ProductState::Running => {}
        }
        let mut pos = self.sources.len();
        while pos > 0 {
            pos -= 1;
            if let Some(v) = self.iters[pos].next() {
                self.current[pos] = v;
                return Some(self.current.clone());
            }
            let mut it = (self.sources[pos])();
            self.current[pos] = it.next().expect("nonempty on restart");
            self.iters[pos] = it;
        }
        self.state = ProductState::Done;
        None
    }
}

fn ideal_source(dj: usize, m: u32, k: u32) -> Result<Source<IdealDescriptor>> {
    drop(enumerate_ideals(dj, m, k)?);
    Ok(Box::new(move || Box::new(enumerate_ideals(dj, m, k).expect("checked"))))
}

/// All cyclic codes, lexicographic in the per-factor descriptor streams.
pub fn enumerate_codes(decomp: &Arc<Decomposition>) -> Result<impl Iterator<Item = CyclicCode>> {
    let m = decomp.field.m();
    let sources = (0..decomp.r()).map(|j| ideal_source(decomp.degree(j), m, decomp.k)).collect::<Result<_>>()?;
    let decomp = decomp.clone();
    Ok(Product::new(sources).map(move |parts| CyclicCode { decomp: decomp.clone(), parts }))
}

/// Self-dual component shapes for a self-reciprocal factor; `Omega` shapes
/// carry omega with the given precision, restricted to the fixed-point kernel.
#[derive(Clone, Copy, Debug)]
enum Shape {
    Plain(IdealCase, u32, u32),
    Omega { case: IdealCase, i: u32, s: u32, t: u32, precision: u32 },
}

fn selfdual_shapes(k: u32) -> Vec<Shape> {
    let mut out = Vec::new();
    let low = k / 2 + 1;
    if k.is_multiple_of(2) {
        let h = k / 2;
        out.push(Shape::Plain(IdealCase::I, h, 0));
        out.push(Shape::Plain(IdealCase::II, 0, 0));
        for t in 0..h {
            out.push(Shape::Omega { case: IdealCase::III, i: h, s: 0, t, precision: h - t });
        }
    } else {
        out.push(Shape::Plain(IdealCase::II, 0, 0));
    }
    for i in low..k {
        out.push(Shape::Omega { case: IdealCase::IV, i, s: 0, t: 0, precision: k - i });
    }
    for i in low..k {
        out.push(Shape::Plain(IdealCase::V, i, k - i));
    }
    for i in low..k {
        for t in 1..k - i {
            out.push(Shape::Omega { case: IdealCase::VI, i, s: k - i, t, precision: k - i - t });
        }
    }
    out
}

fn shape_descriptor(shape: Shape, omega: Option<ChainElement>, dj: usize, k: u32) -> IdealDescriptor {
    let kind = match shape {
        Shape::Plain(IdealCase::I, i, _) => IdealKind::I { i },
        Shape::Plain(IdealCase::II, _, s) => IdealKind::II { s },
        Shape::Plain(_, i, s) => IdealKind::V { i, s },
        Shape::Omega { case, i, s, t, .. } => {
            let omega = omega.expect("omega shape");
            match case {
                IdealCase::III => IdealKind::III { i, t, omega },
                IdealCase::IV => IdealKind::IV { i, t, omega },
                _ => IdealKind::VI { i, s, t, omega },
            }
        }
    };
    IdealDescriptor { kind, dj, k }
}

const KERNEL_GUARD_LOG2: usize = 20;

/// Residue digits `w` with `w + e_j x^{2n-d_j} w(x^{-1}) = 0 mod f_j`, sorted
/// by integer encoding (zero first).
fn fixed_digit_kernel(d: &Decomposition, j: usize) -> Result<Vec<Vec<u32>>> {
    let basis = fixed_kernel_basis(d, j);
    let log2 = basis.rank() * d.field.m() as usize;
    if log2 > KERNEL_GUARD_LOG2 {
        return Err(Error::SizeGuard(format!("self-dual digit space of 2^{log2} elements")));
    }
    let m = d.field.m();
    let mut all: Vec<Vec<u32>> = basis.into_span().collect();
    all.sort_by_key(|v| v.iter().enumerate().map(|(l, &c)| (c as u128) << (m as usize * l)).sum::<u128>());
    Ok(all)
}

fn fixed_kernel_basis(d: &Decomposition, j: usize) -> Echelon {
    let dj = d.degree(j);
    // rows [L(x^a) | e_a]; rows whose left half is zero span ker L
    let mut aug = Echelon::new(d.field, 2 * dj);
    for a in 0..dj {
        let mut unit = vec![0u32; dj];
        unit[a] = 1;
        let mut row = reflect_digit(d, j, &unit);
        row[a] ^= 1;
        row.extend_from_slice(&unit);
        aug.insert(row);
    }
    let kernel = aug.rows().iter().filter(|r| r[..dj].iter().all(|&c| c == 0)).map(|r| r[dj..].to_vec());
    Echelon::from_rows(d.field, dj, kernel)
}

/// Odometer over digit sequences with the leading digit nonzero.
struct KernelUnits {
    kernel: Arc<Vec<Vec<u32>>>,
    state: Option<Vec<usize>>,
}

impl Iterator for KernelUnits {
    type Item = ChainElement;

    fn next(&mut self) -> Option<ChainElement> {
        let cur = self.state.as_mut()?;
        let out = ChainElement::new(cur.iter().map(|&p| self.kernel[p].clone()).collect()).expect("uniform digits");
        let size = self.kernel.len();
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.state = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < size {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    }
}

fn selfdual_slot_source(d: &Decomposition, j: usize) -> Result<Source<IdealDescriptor>> {
    let kernel = Arc::new(fixed_digit_kernel(d, j)?);
    let (dj, k) = (d.degree(j), d.k);
    Ok(Box::new(move || {
        let kernel = kernel.clone();
        Box::new(selfdual_shapes(k).into_iter().flat_map(move |shape| -> Box<dyn Iterator<Item = IdealDescriptor>> {
            match shape {
                Shape::Plain(..) => Box::new(std::iter::once(shape_descriptor(shape, None, dj, k))),
                Shape::Omega { precision, .. } => {
                    let mut start = vec![0usize; precision as usize];
                    start[0] = 1;
                    let state = (kernel.len() > 1).then_some(start);
                    let units = KernelUnits { kernel: kernel.clone(), state };
                    Box::new(units.map(move |w| shape_descriptor(shape, Some(w), dj, k)))
                }
            }
        }))
    }))
}

/// Every self-dual code: self-reciprocal slots range over their self-dual
/// components, and each reciprocal pair over `(C_j, dual of C_j)`.
pub fn selfdual_enumerate(decomp: &Arc<Decomposition>) -> Result<impl Iterator<Item = CyclicCode>> {
    let d = decomp.clone();
    let m = d.field.m();
    let free = d.lambda + d.eps_pairs;
    let mut sources = Vec::with_capacity(free);
    for j in 0..d.lambda {
        sources.push(selfdual_slot_source(&d, j)?);
    }
    for j in d.lambda..free {
        sources.push(ideal_source(d.degree(j), m, d.k)?);
    }
    Ok(Product::new(sources).map(move |chosen| {
        let mut parts = chosen;
        for j in d.lambda..free {
            let partner = dual_part(&d, j, &parts[j]).expect("pair dual is well formed");
            parts.push(partner);
        }
        CyclicCode { decomp: d.clone(), parts }
    }))
}

/// Number of self-dual codes.
pub fn selfdual_count(decomp: &Decomposition) -> Result<BigUint> {
    let mut total = BigUint::one();
    for j in 0..decomp.lambda {
        let kernel = BigUint::one() << (fixed_kernel_basis(decomp, j).rank() * decomp.field.m() as usize);
        let slot: BigUint = selfdual_shapes(decomp.k)
            .into_iter()
            .map(|shape| match shape {
                Shape::Plain(..) => BigUint::one(),
                Shape::Omega { precision, .. } => (&kernel - 1u32) * kernel.pow(precision - 1),
            })
            .sum();
        total *= slot;
    }
    for j in decomp.lambda..decomp.lambda + decomp.eps_pairs {
        total *= count_ideals(&decomp.residue_order(j), decomp.k);
    }
    Ok(total)
}
