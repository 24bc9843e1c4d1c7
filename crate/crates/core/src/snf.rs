//! Smith normal form of characteristic matrices over GF(p)[x].
//!
//! Only the diagonal is computed; the unimodular transforms are not kept.
//! The characteristic polynomial is available two ways: as the product of
//! the invariant factors, and from a division-free computation over the
//! integers ([`charpoly_oracle`]) that shares no code with the SNF path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gfmat::Matrix;
use crate::gfpoly::Poly;

/// Dense matrix with polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.field(), field, "entry over a different field");
                entries.push(e);
            }
        }
        PolyMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    fn to_rows(&self) -> Vec<Vec<Poly>> {
        self.entries.chunks(self.cols.max(1)).map(<[Poly]>::to_vec).take(self.rows).collect()
    }
}

/// `xI - A`.
pub fn char_matrix(a: &Matrix) -> Result<PolyMatrix> {
    a.ensure_square()?;
    let f = a.field();
    let n = a.rows();
    Ok(PolyMatrix::from_fn(f, n, n, |i, j| {
        let c = f.neg(a.get(i, j));
        if i == j {
            Poly::from_coeffs(f, vec![c, 1])
        } else {
            Poly::constant(f, c)
        }
    }))
}

/// Ordered monic invariant factors `s_1 | s_2 | ... | s_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    field: Field,
    invariant_factors: Vec<Poly>,
}

impl SnfResult {
    /// Wraps a list of invariant factors after checking that they are monic
    /// and form a divisibility chain.
    pub fn new(field: Field, invariant_factors: Vec<Poly>) -> Result<Self> {
        for s in &invariant_factors {
            field.check_same(s.field())?;
            if !s.is_monic() {
                return Err(Error::DimensionMismatch(format!("invariant factor {s} is not monic")));
            }
        }
        if let Some(w) = invariant_factors.windows(2).find(|w| !w[0].divides(&w[1])) {
            return Err(Error::DimensionMismatch(format!(
                "invariant factor {} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(SnfResult {
            field,
            invariant_factors,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn factors(&self) -> &[Poly] {
        &self.invariant_factors
    }

    pub fn len(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Invariant factors other than 1.
    pub fn nontrivial(&self) -> &[Poly] {
        let ones = self.invariant_factors.iter().take_while(|s| s.is_one()).count();
        &self.invariant_factors[ones..]
    }

    pub fn charpoly(&self) -> Poly {
        charpoly_from_snf(self)
    }

    /// Invariant factors of `A + cI`, given those of `A`: each `s(x)`
    /// becomes `s(x - c)`.
    pub fn add_scalar(&self, c: u32) -> SnfResult {
        let f = self.field;
        let back = f.neg(f.reduce(c as u64));
        SnfResult {
            field: f,
            invariant_factors: self.invariant_factors.iter().map(|s| s.shift_by(back)).collect(),
        }
    }
}

impl fmt::Display for SnfResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.invariant_factors.iter().map(Poly::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Smith normal form of a square polynomial matrix with nonzero determinant.
///
/// Each diagonal position is settled by repeatedly moving a minimum-degree
/// entry of the active block to the pivot (ties broken by smallest row,
/// then column), clearing its row and column by Euclidean division, and,
/// once they are clear, folding any row whose entries the pivot does not
/// divide back into the pivot row.
pub fn smith_normal_form(m: &PolyMatrix) -> Result<SnfResult> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let f = m.field;
    let mut a = m.to_rows();
    let mut diagonal = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, e) in row.iter().enumerate().skip(t) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Err(Error::Singular);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let pivot = a[t][t].clone();
            let mut cleared = true;
            let pivot_row = a[t].clone();
            for row in a.iter_mut().skip(t + 1) {
                if row[t].is_zero() {
                    continue;
                }
                let (q, r) = row[t].divmod(&pivot)?;
                for k in t..n {
                    row[k] = &row[k] - &(&q * &pivot_row[k]);
                }
                cleared &= r.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].divmod(&pivot)?;
                for row in a.iter_mut().skip(t) {
                    row[j] = &row[j] - &(&q * &row[t]);
                }
                cleared &= r.is_zero();
            }
            if !cleared {
                continue;
            }

            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !pivot.divides(&a[i][j])));
            if let Some(i) = offender {
                for k in t..n {
                    a[t][k] = &a[t][k] + &a[i][k];
                }
                continue;
            }
            diagonal.push(pivot.monic());
            break;
        }
    }
    Ok(SnfResult {
        field: f,
        invariant_factors: diagonal,
    })
}

/// Invariant factors of `xI - A`.
pub fn invariant_factors(a: &Matrix) -> Result<SnfResult> {
    smith_normal_form(&char_matrix(a)?)
}

/// Product of the invariant factors.
pub fn charpoly_from_snf(s: &SnfResult) -> Poly {
    s.invariant_factors.iter().fold(Poly::one(s.field), |acc, p| &acc * p)
}

/// Characteristic polynomial `det(xI - A)` over the integers, highest
/// degree first, via Berkowitz's division-free recurrence.
pub fn integer_charpoly(a: &[Vec<i64>]) -> Result<Vec<BigInt>> {
    let n = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    if n == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let big = |v: i64| BigInt::from(v);
    let mut coeffs = vec![BigInt::one(), -big(a[0][0])];
    for k in 1..n {
        // Leading k x k block M, new row R, new column S and corner entry.
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-big(a[k][k]));
        let mut v: Vec<BigInt> = (0..k).map(|i| big(a[i][k])).collect();
        for _ in 0..k {
            let rv: BigInt = (0..k).map(|j| big(a[k][j]) * &v[j]).sum();
            toeplitz.push(-rv);
            v = (0..k)
                .map(|i| (0..k).map(|j| big(a[i][j]) * &v[j]).sum())
                .collect();
        }
        let next: Vec<BigInt> = (0..k + 2)
            .map(|i| {
                (0..=i.min(k))
                    .map(|j| &toeplitz[i - j] * &coeffs[j])
                    .fold(BigInt::zero(), |acc, t| acc + t)
            })
            .collect();
        coeffs = next;
    }
    Ok(coeffs)
}

/// Characteristic polynomial of an integer matrix, computed exactly over
/// the integers and then reduced modulo `p`.
pub fn charpoly_oracle(a: &[Vec<i64>], field: Field) -> Result<Poly> {
    let descending = integer_charpoly(a)?;
    let p = BigInt::from(field.p());
    let ascending: Vec<u32> = descending
        .iter()
        .rev()
        .map(|c| {
            let r = ((c % &p) + &p) % &p;
            r.to_u32().expect("residue fits in u32")
        })
        .collect();
    Ok(Poly::from_coeffs(field, ascending))
}

/// For each distinct irreducible factor of the characteristic polynomial,
/// its nonzero exponents across the invariant factors, in order. Over a
/// perfect field these are the Jordan block sizes of the roots of that
/// factor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactorData(pub BTreeMap<Poly, Vec<usize>>);

impl FactorData {
    pub fn get(&self, p: &Poly) -> Option<&[usize]> {
        self.0.get(p).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Poly, &[usize])> {
        self.0.iter().map(|(p, e)| (p, e.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `prod p^(sum of exponents)`.
    pub fn charpoly(&self, field: Field) -> Poly {
        self.0.iter().fold(Poly::one(field), |acc, (p, es)| {
            &acc * &p.pow(es.iter().sum::<usize>() as u32)
        })
    }
}

impl fmt::Display for FactorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, es)| format!("{p}: {es:?}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn factor_data(s: &SnfResult) -> Result<FactorData> {
    let mut map: BTreeMap<Poly, Vec<usize>> = BTreeMap::new();
    for inv in s.nontrivial() {
        for (p, e) in inv.factor()?.factors {
            map.entry(p).or_default().push(e);
        }
    }
    Ok(FactorData(map))
}
