use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::presentation::Presentation;

/// `ℤ^free_rank ⊕ ⊕ ℤ/t` for `t` in `torsion` (ascending, each `> 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationResult {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianizationResult {
    pub fn is_free(&self, rank: usize) -> bool {
        self.free_rank == rank && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianizationResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> AbelianizationResult {
    let gens = p.generators();
    let matrix: Vec<Vec<BigInt>> =
        p.relators().iter().map(|r| gens.iter().map(|g| BigInt::from(r.exponent_sum(g.id))).collect()).collect();
    let diagonal = smith_diagonal(matrix, gens.len());
    let rank = diagonal.len();
    let mut torsion: Vec<BigInt> = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    torsion.sort();
    AbelianizationResult { free_rank: gens.len() - rank, torsion }
}

/// Nonzero invariant factors of an integer matrix with `cols` columns.
#[allow(clippy::needless_range_loop)] // row/column elimination reads clearer indexed
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = m[i][t].div_floor(&m[t][t]);
            for j in t..cols {
                let v = &m[t][j] * &q;
                m[i][j] -= v;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = m[t][j].div_floor(&m[t][t]);
            for i in t..rows {
                let v = &m[i][t] * &q;
                m[i][j] -= v;
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the remaining block by the pivot.
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
        if let Some((i, _)) = bad {
            let row = m[i].clone();
            for (x, y) in m[t].iter_mut().zip(row) {
                *x += y;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}
