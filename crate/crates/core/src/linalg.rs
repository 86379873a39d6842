//! Reduced row echelon bases of `F_{2^m}`-subspaces.

use crate::field::FieldSpec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    field: FieldSpec,
    width: usize,
    // sorted by pivot column; pivot entries are 1 and cleared in every other row
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<u32>>>(field: FieldSpec, width: usize, rows: I) -> Self {
        let mut e = Echelon::new(field, width);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn axpy(&self, target: &mut [u32], c: u32, row: &[u32]) {
        for (t, &r) in target.iter_mut().zip(row) {
            if r != 0 {
                *t ^= self.field.mul_bits(c, r);
            }
        }
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        assert_eq!(v.len(), self.width, "vector width");
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                self.axpy(&mut v, c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&c| c == 0)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.field.inv_bits(v[p]).expect("nonzero pivot");
        for c in v.iter_mut() {
            *c = self.field.mul_bits(*c, inv);
        }
        for i in 0..self.rows.len() {
            let c = self.rows[i][p];
            if c != 0 {
                let mut row = std::mem::take(&mut self.rows[i]);
                self.axpy(&mut row, c, &v);
                self.rows[i] = row;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    /// Every vector of the span, `q^rank` of them, in odometer order over
    /// the basis coefficients (first row fastest).
    pub fn span(&self) -> SpanIter {
        self.clone().into_span()
    }

    pub fn into_span(self) -> SpanIter {
        SpanIter { coeffs: Some(vec![0; self.rows.len()]), basis: self }
    }
}

pub struct SpanIter {
    basis: Echelon,
    coeffs: Option<Vec<u32>>,
}

impl Iterator for SpanIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let coeffs = self.coeffs.as_mut()?;
        let mut v = vec![0u32; self.basis.width];
        for (row, &c) in self.basis.rows.iter().zip(coeffs.iter()) {
            if c != 0 {
                self.basis.axpy(&mut v, c, row);
            }
        }
        let q = self.basis.field.order();
        let mut pos = 0;
        loop {
            if pos == coeffs.len() {
                self.coeffs = None;
                break;
            }
            coeffs[pos] += 1;
            if (coeffs[pos] as u64) < q {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
        Some(v)
    }
}
