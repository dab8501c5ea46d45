//! The worked example: `𝒜 = xy(y−1)(y−2)(y+x−2)(y−x)` with `m = 4`.

use crate::geom::{parse_linear_factor, Arrangement};

pub const PAPER_MULT: usize = 4;
pub const PAPER_LINE: &str = "H1";

const A_FACTORS: [&str; 6] = ["x", "y", "y-1", "y-2", "y+x-2", "y-x"];
const PENCIL_FACTORS: [&str; 3] = ["y+3x+1", "y+4x+1", "y+5x+1"];
const PARALLEL_FACTORS: [&str; 3] = ["y+3x+3", "y+3x+2", "y+3x+1"];

fn build(factors: &[(&str, String)]) -> Arrangement {
    let lines =
        factors.iter().map(|(f, label)| parse_linear_factor(f, label.clone()).expect("built-in factor")).collect();
    Arrangement::new(lines).expect("built-in arrangement")
}

fn labelled<'a>(stem: &str, fs: &[&'a str]) -> Vec<(&'a str, String)> {
    fs.iter().enumerate().map(|(k, f)| (*f, format!("{stem}{}", k + 1))).collect()
}

/// `𝒜` with labels `H1..H6` in the order of its defining polynomial.
pub fn paper_a() -> Arrangement {
    build(&labelled("H", &A_FACTORS))
}

/// `B_{H1} = 𝒜 ∪ {y+3x+1, y+4x+1, y+5x+1}`, added lines `C1..C3`.
pub fn paper_b_h1() -> Arrangement {
    let mut fs = labelled("H", &A_FACTORS);
    fs.extend(labelled("C", &PENCIL_FACTORS));
    build(&fs)
}

/// `B_∞ = 𝒜 ∪ {y+3x+3, y+3x+2, y+3x+1}`, added lines `D1..D3`.
pub fn paper_b_inf() -> Arrangement {
    let mut fs = labelled("H", &A_FACTORS);
    fs.extend(labelled("D", &PARALLEL_FACTORS));
    build(&fs)
}
