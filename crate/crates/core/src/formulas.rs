//! Nullity of the Kronecker-sum operator `X -> AX - XB` and its bounds.
//!
//! Every closed-form route here has a ground truth in [`oracle_nullity`],
//! which eliminates the explicit `mn x mn` operator.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::game::{Graph, Mode};
use crate::gfmat::Matrix;
use crate::gfpoly::Poly;
use crate::snf::{charpoly_oracle, FactorData, SnfResult};

/// Largest operator dimension `mn` the oracle accepts by default.
pub const ORACLE_CAP: usize = 4096;

/// A partition of a nonnegative integer into positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Random ordered partition of `total`: each of the `total - 1` gaps is
    /// cut independently with probability 1/2.
    pub fn random<R: Rng + ?Sized>(total: usize, rng: &mut R) -> Self {
        let mut parts = Vec::new();
        let mut run = 0;
        for k in 0..total {
            run += 1;
            if k + 1 == total || rng.gen_bool(0.5) {
                parts.push(run);
                run = 0;
            }
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `sum_i sum_j min(pi_i, tau_j)`; never below `min(total(pi), total(tau))`.
pub fn partition_min_sum(pi: &Partition, tau: &Partition) -> usize {
    pi.parts
        .iter()
        .map(|&a| tau.parts.iter().map(|&b| a.min(b)).sum::<usize>())
        .sum()
}

/// Sum over irreducibles `p` common to both inputs of
/// `deg(p) * sum_i sum_j min(e_i, f_j)`.
pub fn nullity_from_factor_data(fa: &FactorData, fb: &FactorData) -> usize {
    fa.iter()
        .filter_map(|(p, es)| fb.get(p).map(|fs| (p, es, fs)))
        .map(|(p, es, fs)| {
            let blocks: usize = es.iter().map(|&e| fs.iter().map(|&f| e.min(f)).sum::<usize>()).sum();
            p.degree_or_zero() * blocks
        })
        .sum()
}

/// `sum_i sum_j deg gcd(s_i, t_j)`.
pub fn nullity_snf_product(sa: &SnfResult, sb: &SnfResult) -> Result<usize> {
    sa.field().check_same(sb.field())?;
    Ok(sa
        .nontrivial()
        .iter()
        .map(|s| sb.nontrivial().iter().map(|t| s.gcd(t).degree_or_zero()).sum::<usize>())
        .sum())
}

/// `sum_i (2m - 2i + 1) deg s_i` for `m` invariant factors indexed from 1.
pub fn nullity_snf_self(sa: &SnfResult) -> usize {
    let m = sa.len();
    sa.factors()
        .iter()
        .enumerate()
        .map(|(idx, s)| (2 * m - 2 * (idx + 1) + 1) * s.degree_or_zero())
        .sum()
}

/// Nullity of the adjacency matrix of `P_m x G` as
/// `sum_i deg gcd(c_{P_m}, s_i)`, relying on paths being non-derogatory.
pub fn nullity_path_product(m: usize, sg: &SnfResult) -> Result<usize> {
    let cp = charpoly_oracle(&Graph::path(m).adjacency_integers(), sg.field())?;
    Ok(sg.factors().iter().map(|s| cp.gcd(s).degree_or_zero()).sum())
}

/// `deg gcd(c_A, c_B)` (open) or `deg gcd(c_A(x + 1), c_B)` (closed).
pub fn gcd_lower_bound(ca: &Poly, cb: &Poly, mode: Mode) -> usize {
    let ca = match mode {
        Mode::Open => ca.clone(),
        Mode::Closed => ca.shift_one(),
    };
    ca.gcd(cb).degree_or_zero()
}

/// Nullity of `I_n (x) A - B^T (x) I_m` by Gaussian elimination.
pub fn oracle_nullity(a: &Matrix, b: &Matrix, cap: usize) -> Result<usize> {
    a.ensure_square()?;
    b.ensure_square()?;
    let size = a.rows() * b.rows();
    if size > cap {
        return Err(Error::OracleCap { size, cap });
    }
    Ok(Matrix::sylvester_operator(a, b)?.nullity())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NullityMethod {
    TheoremSum,
    SnfProduct,
    SnfSelf,
    SnfPath,
    Oracle,
    LowerBoundOpen,
    LowerBoundClosed,
}

impl fmt::Display for NullityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NullityMethod::TheoremSum => "theorem_sum",
            NullityMethod::SnfProduct => "snf_product",
            NullityMethod::SnfSelf => "snf_self",
            NullityMethod::SnfPath => "snf_path",
            NullityMethod::Oracle => "oracle",
            NullityMethod::LowerBoundOpen => "lower_bound_open",
            NullityMethod::LowerBoundClosed => "lower_bound_closed",
        })
    }
}

/// One nullity value together with how and from what it was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullityReport {
    pub method: NullityMethod,
    pub value: usize,
    pub inputs: String,
    pub field: Field,
    pub seed: Option<u64>,
}

/// Deterministic stream of random graph pairs for sweeps. Vertex counts are
/// uniform in `1..=max_vertices` and edges appear with probability 1/2.
pub fn random_graph_pairs(seed: u64, count: usize, max_vertices: usize) -> Vec<(Graph, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=max_vertices);
            let n = rng.gen_range(1..=max_vertices);
            (Graph::random(m, 0.5, &mut rng), Graph::random(n, 0.5, &mut rng))
        })
        .collect()
}

/// Random square 0/1 matrix (not necessarily symmetric) over `field`.
pub fn random_binary_matrix<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(field, n, n, |_, _| u32::from(rng.gen_bool(0.5)))
}

/// Piecewise value `0` if `nu = 0`, `(size - 3) + nu` if `1 <= nu <= 3`
/// and `size` if `nu > 3`, evaluated in signed arithmetic.
pub fn star_path_piecewise(nu: usize, size: usize) -> i64 {
    let (nu, size) = (nu as i64, size as i64);
    match nu {
        0 => 0,
        1..=3 => size - 3 + nu,
        _ => size,
    }
}

/// Multiplicity of `x` as a factor of `f` (zero for `f = 0`).
pub fn x_multiplicity(f: &Poly) -> usize {
    if f.is_zero() {
        return 0;
    }
    f.coeffs().iter().take_while(|&&c| c == 0).count()
}
