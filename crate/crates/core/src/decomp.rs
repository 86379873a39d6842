//! CRT idempotents of `F_{2^m}[x]/<x^{2n} - 1>`, the coefficient-matrix view
//! of `R[x]/<x^{2n} - 1>`, and the reciprocal permutation of the factors.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{extended_gcd, factor_xn_minus_1, reciprocal, Factorization, PolyRepr, Polynomial};

/// Index arrangement in which self-reciprocal factors come first and each
/// reciprocal pair sits at positions `lambda + l` and `lambda + eps_pairs + l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocalArrangement {
    /// `order[new] = old` index into the input factorization.
    pub order: Vec<usize>,
    /// Involution on the new (0-based) indices.
    pub rho: Vec<usize>,
    /// `reciprocal(f_j) = e_j * f_{rho(j)}`, new indexing.
    pub e: Vec<FieldElement>,
    pub lambda: usize,
    pub eps_pairs: usize,
}

pub fn reciprocal_permutation(fact: &Factorization) -> Result<ReciprocalArrangement> {
    let r = fact.len();
    let mut partner = Vec::with_capacity(r);
    let mut e_old = Vec::with_capacity(r);
    for f in &fact.factors {
        let (g, e) = reciprocal(f)?;
        let idx = fact
            .factors
            .iter()
            .position(|h| *h == g)
            .ok_or_else(|| Error::Internal(format!("reciprocal of {f} is not a factor")))?;
        partner.push(idx);
        e_old.push(e);
    }
    let fixed: Vec<usize> = (0..r).filter(|&j| partner[j] == j).collect();
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    for (j, &pj) in partner.iter().enumerate() {
        if pj != j && !firsts.contains(&j) && !seconds.contains(&j) {
            firsts.push(j);
            seconds.push(pj);
        }
    }
    let order: Vec<usize> = fixed.iter().chain(&firsts).chain(&seconds).copied().collect();
    let mut position = vec![0; r];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let rho = order.iter().map(|&old| position[partner[old]]).collect();
    let e = order.iter().map(|&old| e_old[old]).collect();
    Ok(ReciprocalArrangement { order, rho, e, lambda: fixed.len(), eps_pairs: firsts.len() })
}

/// Everything needed to move between a cyclic code and its per-factor
/// components, with factors in the reciprocal arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub field: FieldSpec,
    pub n: usize,
    pub k: u32,
    pub factorization: Factorization,
    pub idempotents: Vec<Polynomial>,
    pub rho: Vec<usize>,
    pub e: Vec<FieldElement>,
    pub lambda: usize,
    pub eps_pairs: usize,
}

impl Decomposition {
    pub fn new(field: FieldSpec, n: usize, k: u32) -> Result<Self> {
        let fact = factor_xn_minus_1(field, n)?;
        compute_idempotents(&fact, k)
    }

    pub fn two_n(&self) -> usize {
        2 * self.n
    }

    pub fn r(&self) -> usize {
        self.factorization.len()
    }

    pub fn factor(&self, j: usize) -> &Polynomial {
        &self.factorization.factors[j]
    }

    pub fn degree(&self, j: usize) -> usize {
        self.factor(j).degree().expect("nonzero factor")
    }

    /// Residue field size `2^{m d_j}`.
    pub fn residue_order(&self, j: usize) -> BigUint {
        BigUint::from(2u32).pow(self.field.m() * self.degree(j) as u32)
    }

    /// Bits of the ambient space `R^{2n}`: `2n m k`.
    pub fn space_log2(&self) -> u64 {
        (self.two_n() as u64) * self.field.m() as u64 * self.k as u64
    }

    pub fn report(&self) -> DecompositionReport {
        DecompositionReport {
            m: self.field.m(),
            modulus: crate::field::format_binary_literal(self.field.modulus()),
            n: self.n,
            k: self.k,
            factors: self.factorization.factors.iter().map(Polynomial::to_repr).collect(),
            degrees: self.factorization.degrees(),
            idempotents: self.idempotents.iter().map(|p| p.coeffs().to_vec()).collect(),
            rho: self.rho.iter().map(|&j| j + 1).collect(),
            e: self.e.iter().map(FieldElement::bits).collect(),
            lambda: self.lambda,
            eps_pairs: self.eps_pairs,
        }
    }
}

/// JSON view of a [`Decomposition`] (1-based `rho`).
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub m: u32,
    pub modulus: String,
    pub n: usize,
    pub k: u32,
    pub factors: Vec<PolyRepr>,
    pub degrees: Vec<usize>,
    pub idempotents: Vec<Vec<u32>>,
    pub rho: Vec<usize>,
    pub e: Vec<u32>,
    pub lambda: usize,
    pub eps_pairs: usize,
}

/// Rearranges `fact` into the reciprocal arrangement and computes
/// `eps_j = a_j F_j mod x^{2n} - 1` from `a_j F_j + b_j f_j^2 = 1`, where
/// `F_j = (x^{2n} - 1) / f_j^2`.
pub fn compute_idempotents(fact: &Factorization, k: u32) -> Result<Decomposition> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    let field = fact.field;
    let arrangement = reciprocal_permutation(fact)?;
    let factors: Vec<Polynomial> = arrangement.order.iter().map(|&j| fact.factors[j].clone()).collect();
    let two_n = 2 * fact.n;
    let modulus = Polynomial::x_pow_minus_one(field, two_n);
    let mut idempotents = Vec::with_capacity(factors.len());
    for f in &factors {
        let f_sq = f * f;
        let (cofactor, rem) = modulus.divmod(&f_sq)?;
        if !rem.is_zero() {
            return Err(Error::Internal(format!("{f}^2 does not divide x^{two_n}-1")));
        }
        let (g, a, _b) = extended_gcd(&cofactor, &f_sq)?;
        if !g.is_one() {
            return Err(Error::Internal(format!("F_j and {f}^2 are not coprime")));
        }
        idempotents.push((&a * &cofactor).rem(&modulus));
    }
    Ok(Decomposition {
        field,
        n: fact.n,
        k,
        factorization: Factorization { field, n: fact.n, factors },
        idempotents,
        rho: arrangement.rho,
        e: arrangement.e,
        lambda: arrangement.lambda,
        eps_pairs: arrangement.eps_pairs,
    })
}

/// Coefficient array `a_{i,l}` (row `i` = power of `x`, column `l` = power of `u`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElementMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl RingElementMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, l: usize) -> u32 {
        self.entries[i * self.cols + l]
    }

    /// `a_l(x) = sum_i a_{i,l} x^i`, the `u^l` component in `A[u]/<u^k>`.
    pub fn column_polynomials(&self) -> Vec<Polynomial> {
        (0..self.cols)
            .map(|l| Polynomial::from_raw(self.field, (0..self.rows).map(|i| self.get(i, l)).collect()))
            .collect()
    }
}

/// Transcribes `2n` ring coefficients (each `k` u-adic digits) into the
/// `2n x k` coefficient array.
pub fn psi_forward(field: FieldSpec, n: usize, k: u32, coeffs: &[Vec<u32>]) -> Result<RingElementMatrix> {
    let rows = 2 * n;
    let cols = k as usize;
    if coeffs.len() != rows {
        return Err(Error::InvalidParameters(format!("expected {rows} coefficients, got {}", coeffs.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for c in coeffs {
        if c.len() != cols || c.iter().any(|&d| d & !field.mask() != 0) {
            return Err(Error::InvalidParameters(format!("bad ring element {c:?}")));
        }
        entries.extend_from_slice(c);
    }
    Ok(RingElementMatrix { field, rows, cols, entries })
}

pub fn psi_backward(matrix: &RingElementMatrix) -> Vec<Vec<u32>> {
    matrix.entries.chunks(matrix.cols).map(<[u32]>::to_vec).collect()
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

    fn check_idempotent_identities(d: &Decomposition) {
        let two_n = d.two_n();
        let sum = d.idempotents.iter().fold(Polynomial::zero(d.field), |acc, e| &acc + e);
        assert!(sum.is_one());
        for (j, a) in d.idempotents.iter().enumerate() {
            assert_eq!((a * a).reduce_cyclic(two_n), *a);
            for b in &d.idempotents[j + 1..] {
                assert!((a * b).reduce_cyclic(two_n).is_zero());
            }
        }
    }

    #[test]
    fn n7_idempotents() {
        let d = Decomposition::new(f2(), 7, 4).unwrap();
        assert_eq!(
            d.idempotents,
            vec![p("x^12+x^10+x^8+x^6+x^4+x^2+1"), p("x^8+x^4+x^2+1"), p("x^12+x^10+x^6+1")]
        );
        check_idempotent_identities(&d);
    }

    #[test]
    fn n1_and_n3() {
        let d1 = Decomposition::new(f2(), 1, 2).unwrap();
        assert_eq!(d1.idempotents, vec![Polynomial::one(f2())]);
        assert_eq!((d1.lambda, d1.eps_pairs), (1, 0));
        assert_eq!(d1.rho, vec![0]);
        let d3 = Decomposition::new(f2(), 3, 2).unwrap();
        check_idempotent_identities(&d3);
        assert_eq!((d3.lambda, d3.eps_pairs), (2, 0));
    }

    #[test]
    fn n7_reciprocal_arrangement() {
        let d = Decomposition::new(f2(), 7, 4).unwrap();
        assert_eq!((d.lambda, d.eps_pairs), (1, 1));
        assert_eq!(d.rho, vec![0, 2, 1]);
        assert!(d.e.iter().all(|e| e.bits() == 1));
        assert_eq!(d.report().rho, vec![1, 3, 2]);
    }

    #[test]
    fn arrangement_invariants_over_several_fields() {
        for m in 1..=3 {
            let field = FieldSpec::default_for(m).unwrap();
            for n in [1usize, 3, 5, 7, 9, 15, 21, 31] {
                let d = Decomposition::new(field, n, 2).unwrap();
                check_idempotent_identities(&d);
                let r = d.r();
                assert_eq!(d.lambda + 2 * d.eps_pairs, r);
                for j in 0..r {
                    assert_eq!(d.rho[d.rho[j]], j);
                    let (g, e) = reciprocal(d.factor(j)).unwrap();
                    assert_eq!(&g, d.factor(d.rho[j]));
                    assert_eq!(e, d.e[j]);
                    if j < d.lambda {
                        assert_eq!(d.rho[j], j);
                    }
                }
                for l in 0..d.eps_pairs {
                    assert_eq!(d.rho[d.lambda + l], d.lambda + d.eps_pairs + l);
                }
                // eps_j(x^{-1}) = eps_{rho(j)}(x)
                for j in 0..r {
                    assert_eq!(d.idempotents[j].reflect_cyclic(d.two_n()), d.idempotents[d.rho[j]]);
                }
            }
        }
    }

    #[test]
    fn psi_examples() {
        let zero = vec![vec![0u32; 3]; 6];
        let mat = psi_forward(f2(), 3, 3, &zero).unwrap();
        assert!((0..6).all(|i| (0..3).all(|l| mat.get(i, l) == 0)));
        let mat = psi_forward(f2(), 1, 2, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!((mat.get(0, 0), mat.get(0, 1), mat.get(1, 0), mat.get(1, 1)), (1, 1, 0, 0));
        assert_eq!(mat.column_polynomials(), vec![Polynomial::one(f2()), Polynomial::one(f2())]);
        assert!(psi_forward(f2(), 1, 2, &[vec![1, 1]]).is_err());
    }

    fn arb_ring_vector() -> impl Strategy<Value = (FieldSpec, usize, u32, Vec<Vec<u32>>)> {
        (1u32..=3, 1usize..=4, 1u32..=4).prop_flat_map(|(m, n, k)| {
            let field = FieldSpec::default_for(m).unwrap();
            let digit = 0..(1u32 << m);
            let elem = prop::collection::vec(digit, k as usize);
            prop::collection::vec(elem, 2 * n).prop_map(move |v| (field, n, k, v))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn psi_round_trip((field, n, k, coeffs) in arb_ring_vector()) {
            let mat = psi_forward(field, n, k, &coeffs).unwrap();
            prop_assert_eq!(psi_backward(&mat), coeffs);
        }
    }
}
