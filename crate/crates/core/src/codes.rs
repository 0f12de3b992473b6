//! Linear codes, Reed-Muller constructions, and code/supercode pairs.
//!
//! A [`CodePair`] holds a code `C` and a supercode `C̄ ⊇ C` whose parity-check
//! matrices are related by stacking: `H = [H̄; P]`. Any row prefix of a
//! full-rank parity-check matrix defines such a supercode.

use crate::error::{Error, Result};
use crate::gf2::{extend_basis, BinaryMatrix, BinaryVector};

/// Largest supported Reed-Muller log-length (`n = 4096`).
pub const MAX_RM_M: usize = 12;

/// An `(n, k)` binary linear code given by a full-rank parity-check matrix,
/// with a generator matrix kept alongside for enumeration.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    k: usize,
    h: BinaryMatrix,
    g: BinaryMatrix,
}

impl LinearCode {
    /// Builds the code from its parity-check matrix; the generator is the
    /// null space of `h`.
    pub fn from_parity_check(h: BinaryMatrix) -> Result<Self> {
        let g = h.null_space();
        Self::with_generator(h, g)
    }

    /// Builds the code from a parity-check and generator matrix pair,
    /// verifying full rank, complementary dimensions, and `G·Hᵀ = 0`.
    pub fn with_generator(h: BinaryMatrix, g: BinaryMatrix) -> Result<Self> {
        let n = h.num_cols();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if g.num_cols() != n {
            return Err(Error::Dimension(format!(
                "generator has {} columns, parity-check matrix has {}",
                g.num_cols(),
                n
            )));
        }
        for m in [&h, &g] {
            let rank = m.rank();
            if rank != m.num_rows() {
                return Err(Error::RankDeficient {
                    rank,
                    rows: m.num_rows(),
                });
            }
        }
        if g.num_rows() + h.num_rows() != n {
            return Err(Error::InvalidCode(format!(
                "dimension {} plus {} checks does not equal length {}",
                g.num_rows(),
                h.num_rows(),
                n
            )));
        }
        if !g.mul_transpose(&h)?.is_zero() {
            return Err(Error::InvalidCode(
                "generator rows are not annihilated by the parity-check matrix".into(),
            ));
        }
        Ok(Self {
            n,
            k: g.num_rows(),
            h,
            g,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.g
    }

    pub fn syndrome(&self, v: &BinaryVector) -> Result<BinaryVector> {
        self.h.mat_vec_mul(v)
    }

    pub fn is_codeword(&self, v: &BinaryVector) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }

    /// Encodes `k` information bits as `u · G`.
    pub fn encode(&self, info: &BinaryVector) -> Result<BinaryVector> {
        if info.len() != self.k {
            return Err(Error::Dimension(format!(
                "{} information bits for a code of dimension {}",
                info.len(),
                self.k
            )));
        }
        let mut v = BinaryVector::zeros(self.n);
        for i in info.ones() {
            v.xor_assign(self.g.row(i));
        }
        Ok(v)
    }
}

/// A code `C` with a supercode `C̄`, where `C.H` is `C̄.H` stacked on `P`.
#[derive(Clone, Debug)]
pub struct CodePair {
    code: LinearCode,
    supercode: LinearCode,
    p_rows: BinaryMatrix,
}

impl CodePair {
    /// Assembles a pair from `H̄` and `P`, checking every pair invariant.
    pub fn new(supercode_h: BinaryMatrix, p_rows: BinaryMatrix) -> Result<Self> {
        let h = supercode_h.vstack(&p_rows)?;
        let code = LinearCode::from_parity_check(h)?;
        Self::from_parts(code, supercode_h, p_rows)
    }

    fn from_parts(
        code: LinearCode,
        supercode_h: BinaryMatrix,
        p_rows: BinaryMatrix,
    ) -> Result<Self> {
        if p_rows.num_rows() == 0 {
            return Err(Error::InvalidCode(
                "supercode must have strictly larger dimension than the code".into(),
            ));
        }
        let supercode = LinearCode::from_parity_check(supercode_h)?;
        let pair = Self {
            code,
            supercode,
            p_rows,
        };
        pair.check_invariants()?;
        Ok(pair)
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn supercode(&self) -> &LinearCode {
        &self.supercode
    }

    pub fn p_rows(&self) -> &BinaryMatrix {
        &self.p_rows
    }

    pub fn n(&self) -> usize {
        self.code.n
    }

    /// Number of supercode checks, i.e. the length of a projected state.
    pub fn num_super_checks(&self) -> usize {
        self.supercode.h.num_rows()
    }

    fn check_invariants(&self) -> Result<()> {
        let (c, s) = (&self.code, &self.supercode);
        if c.n != s.n {
            return Err(Error::InvalidCode(
                "code and supercode lengths differ".into(),
            ));
        }
        if s.k <= c.k {
            return Err(Error::InvalidCode(format!(
                "supercode dimension {} is not larger than code dimension {}",
                s.k, c.k
            )));
        }
        let t = s.h.num_rows();
        if c.h.num_rows() != t + self.p_rows.num_rows()
            || c.h.rows()[..t] != *s.h.rows()
            || c.h.rows()[t..] != *self.p_rows.rows()
        {
            return Err(Error::InvalidCode(
                "code parity-check matrix is not the supercode's stacked on P".into(),
            ));
        }
        if !c.g.mul_transpose(&s.h)?.is_zero() {
            return Err(Error::InvalidCode(
                "code is not contained in the supercode".into(),
            ));
        }
        Ok(())
    }
}

/// Dimension of RM(r, m): `1 + Σ_{i=1..r} C(m, i)`.
pub fn rm_dimension(r: usize, m: usize) -> Result<usize> {
    if r > m {
        return Err(Error::InvalidCode(format!("RM order {r} exceeds m = {m}")));
    }
    Ok((0..=r).map(|i| binomial(m, i)).sum())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Variable subsets of `{0..m}` with at most `r` elements, ordered by size
/// and then lexicographically.
fn monomials(r: usize, m: usize) -> Vec<Vec<usize>> {
    fn combos(
        start: usize,
        m: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            combos(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for degree in 0..=r {
        combos(0, m, degree, &mut Vec::new(), &mut out);
    }
    out
}

/// Generator matrix of RM(r, m): one row per monomial of degree ≤ r,
/// evaluated at every point `j ∈ [0, 2^m)` with `x_i = (j >> i) & 1`.
pub fn rm_generator(r: usize, m: usize) -> Result<BinaryMatrix> {
    if m > MAX_RM_M {
        return Err(Error::InvalidCode(format!(
            "RM log-length {m} exceeds {MAX_RM_M}"
        )));
    }
    if r > m {
        return Err(Error::InvalidCode(format!("RM order {r} exceeds m = {m}")));
    }
    let n = 1usize << m;
    let rows = monomials(r, m)
        .into_iter()
        .map(|vars| {
            let mask = vars.iter().fold(0usize, |acc, &i| acc | (1 << i));
            let mut row = BinaryVector::zeros(n);
            for j in (0..n).filter(|j| j & mask == mask) {
                row.set(j, true);
            }
            row
        })
        .collect();
    BinaryMatrix::from_rows(n, rows)
}

/// The pair `C = RM(r, m)`, `C̄ = RM(r̄, m)`.
///
/// `H̄` is the generator of the dual RM(m − r̄ − 1, m) and `P` extends it to
/// a basis of the dual RM(m − r − 1, m). When `r̄ = m` the supercode is the
/// whole space and `H̄` has no rows.
pub fn rm_code_pair(r: usize, rbar: usize, m: usize) -> Result<CodePair> {
    if !(r < rbar && rbar <= m) {
        return Err(Error::InvalidCode(format!(
            "need 0 <= r < rbar <= m, got r={r}, rbar={rbar}, m={m}"
        )));
    }
    let n = 1usize << m;
    let hbar = if rbar == m {
        BinaryMatrix::zeros(0, n)
    } else {
        rm_generator(m - rbar - 1, m)?
    };
    let dual = rm_generator(m - r - 1, m)?;
    let p = extend_basis(&hbar, &dual)?;
    let h = hbar.vstack(&p)?;
    let code = LinearCode::with_generator(h, rm_generator(r, m)?)?;
    let supercode_g = rm_generator(rbar, m)?;
    let supercode = LinearCode::with_generator(hbar, supercode_g)?;
    let pair = CodePair {
        code,
        supercode,
        p_rows: p,
    };
    pair.check_invariants()?;
    Ok(pair)
}

/// Splits a full-rank parity-check matrix after its first `t` rows: the
/// prefix defines the supercode, the rest becomes `P`.
pub fn pair_from_parity_check(h: &BinaryMatrix, t: usize) -> Result<CodePair> {
    let rank = h.rank();
    if rank != h.num_rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: h.num_rows(),
        });
    }
    if t == 0 || t >= h.num_rows() {
        return Err(Error::InvalidCode(format!(
            "prefix {t} must satisfy 1 <= t < {}",
            h.num_rows()
        )));
    }
    let code = LinearCode::from_parity_check(h.clone())?;
    CodePair::from_parts(code, h.row_slice(0..t), h.row_slice(t..h.num_rows()))
}
