//! Text formats: `.arr` arrangement files and `.fam` family files.
//!
//! ```text
//! arr v1
//! # comment
//! H1: factor x
//! line 1 -1/2 3+1/2i        # label defaults to L2
//! ```
//!
//! ```text
//! fam v1
//! D1: fline 3 ; 1 ; 3 - 13*t - (t - t^2)i
//! samples 0 1/7 1/3 1/2 5/7 1
//! ```

use crate::constructions::isotopy::{default_samples, FamilyLine, IsotopyFamily, Poly};
use crate::error::{Error, Result};
use crate::expr::{self, Constant, LinearForm};
use crate::geom::{Arrangement, Line};
use crate::rational::{fmt_rational, Rational};

pub const ARR_HEADER: &str = "arr v1";
pub const FAM_HEADER: &str = "fam v1";

/// One meaningful source line: 1-based line number, text with the comment
/// removed, and the byte offset of the text within the raw line.
struct SourceLine<'a> {
    number: usize,
    raw: &'a str,
    text: &'a str,
    offset: usize,
}

impl SourceLine<'_> {
    fn column(&self, byte: usize) -> usize {
        self.raw[..byte].chars().count() + 1
    }

    fn error_at(&self, byte: usize, message: impl Into<String>) -> Error {
        Error::Parse { line: self.number, column: self.column(byte), message: message.into() }
    }

    /// Re-anchors an expression error raised on `self.raw[byte..]`.
    fn relocate(&self, byte: usize, e: Error) -> Error {
        match e {
            Error::Parse { column, message, .. } => {
                Error::Parse { line: self.number, column: self.column(byte) + column - 1, message }
            }
            Error::DegenerateLine => self.error_at(byte, "degenerate line: both x and y coefficients vanish"),
            other => other,
        }
    }
}

fn source_lines(src: &str) -> impl Iterator<Item = SourceLine<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let text = trimmed.trim_end();
        (!text.is_empty()).then_some(SourceLine { number: i + 1, raw, text, offset })
    })
}

fn expect_header<'a>(lines: &mut impl Iterator<Item = SourceLine<'a>>, header: &str) -> Result<()> {
    match lines.next() {
        Some(l) if l.text.split_whitespace().collect::<Vec<_>>().join(" ") == header => Ok(()),
        Some(l) => Err(l.error_at(l.offset, format!("expected header `{header}`, found `{}`", l.text))),
        None => Err(Error::Parse { line: 1, column: 1, message: format!("empty file; expected header `{header}`") }),
    }
}

/// Splits an optional `label:` prefix; returns (label, rest, offset of rest).
fn split_label<'a>(l: &SourceLine<'a>) -> (Option<&'a str>, &'a str, usize) {
    if let Some(colon) = l.text.find(':') {
        let label = &l.text[..colon];
        if !label.is_empty() && label.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            let rest = &l.text[colon + 1..];
            let trimmed = rest.trim_start();
            return (Some(label), trimmed, l.offset + colon + 1 + (rest.len() - trimmed.len()));
        }
    }
    (None, l.text, l.offset)
}

/// Splits the first whitespace-delimited word; returns (word, rest, offset).
fn keyword(text: &str, offset: usize) -> (&str, &str, usize) {
    let end = text.find(char::is_whitespace).unwrap_or(text.len());
    let rest = &text[end..];
    let trimmed = rest.trim_start();
    (&text[..end], trimmed, offset + end + (rest.len() - trimmed.len()))
}

fn check_label(labels: &mut Vec<String>, label: String, l: &SourceLine<'_>) -> Result<String> {
    if labels.contains(&label) {
        return Err(l.error_at(l.offset, format!("duplicate label `{label}`")));
    }
    labels.push(label.clone());
    Ok(label)
}

pub fn parse_arr(src: &str) -> Result<Arrangement> {
    let mut lines = source_lines(src);
    expect_header(&mut lines, ARR_HEADER)?;
    let mut labels = Vec::new();
    let mut out = Vec::new();
    for l in lines {
        let (label, rest, at) = split_label(&l);
        let label = check_label(&mut labels, label.map_or_else(|| format!("L{}", out.len() + 1), str::to_string), &l)?;
        let (kw, body, body_at) = keyword(rest, at);
        let line = match kw {
            "line" => {
                let mut coeffs = Vec::new();
                let mut pos = body_at;
                for tok in body.split_whitespace() {
                    let start = pos + l.raw[pos..].find(tok).expect("token in line");
                    let c = expr::parse::<Constant>(tok).map_err(|e| l.relocate(start, e))?;
                    coeffs.push(c.0);
                    pos = start + tok.len();
                }
                if coeffs.len() != 3 {
                    return Err(l.error_at(body_at, format!("`line` takes 3 coefficients, found {}", coeffs.len())));
                }
                let [a, b, c]: [_; 3] = coeffs.try_into().expect("three coefficients");
                Line::new(a, b, c, label).map_err(|e| l.relocate(body_at, e))?
            }
            "factor" => {
                let form = expr::parse::<LinearForm>(body).map_err(|e| l.relocate(body_at, e))?;
                Line::new(form.a, form.b, form.c, label).map_err(|e| l.relocate(body_at, e))?
            }
            other => return Err(l.error_at(at, format!("unknown keyword `{other}`; expected `line` or `factor`"))),
        };
        out.push(line);
    }
    Arrangement::new(out)
}

/// Renders real lines as `factor` declarations and complex ones as `line`
/// triples; [`parse_arr`] reads the output back to the same arrangement.
pub fn render_arr(arr: &Arrangement) -> String {
    let mut out = format!("{ARR_HEADER}\n");
    for l in arr.lines() {
        if l.is_real() {
            out.push_str(&format!("{}: factor {}\n", l.label, l.render()));
        } else {
            out.push_str(&format!("{}: line {} {} {}\n", l.label, l.a, l.b, l.c));
        }
    }
    out
}

pub fn parse_fam(src: &str) -> Result<IsotopyFamily> {
    let mut lines = source_lines(src);
    expect_header(&mut lines, FAM_HEADER)?;
    let mut labels = Vec::new();
    let mut out = Vec::new();
    let mut samples: Option<Vec<Rational>> = None;
    for l in lines {
        let (label, rest, at) = split_label(&l);
        let (kw, body, body_at) = keyword(rest, at);
        match kw {
            "fline" => {
                let label =
                    check_label(&mut labels, label.map_or_else(|| format!("L{}", out.len() + 1), str::to_string), &l)?;
                let mut polys = Vec::new();
                let mut pos = body_at;
                for part in body.split(';') {
                    polys.push(Poly::parse(part).map_err(|e| l.relocate(pos, e))?);
                    pos += part.len() + 1;
                }
                if polys.len() != 3 {
                    return Err(l.error_at(
                        body_at,
                        format!("`fline` takes 3 `;`-separated polynomials, found {}", polys.len()),
                    ));
                }
                let [a, b, c]: [_; 3] = polys.try_into().expect("three polynomials");
                out.push(FamilyLine::new(label, a, b, c));
            }
            "samples" if label.is_none() => {
                if samples.is_some() {
                    return Err(l.error_at(at, "duplicate `samples` line"));
                }
                let mut ts = Vec::new();
                let mut pos = body_at;
                for tok in body.split_whitespace() {
                    let start = pos + l.raw[pos..].find(tok).expect("token in line");
                    let c = expr::parse::<Constant>(tok).map_err(|e| l.relocate(start, e))?;
                    if !c.0.is_real() {
                        return Err(l.error_at(start, format!("sample `{tok}` is not real")));
                    }
                    ts.push(c.0.re);
                    pos = start + tok.len();
                }
                samples = Some(ts);
            }
            other => return Err(l.error_at(at, format!("unknown keyword `{other}`; expected `fline` or `samples`"))),
        }
    }
    IsotopyFamily::new(out, samples.unwrap_or_else(default_samples))
}

pub fn render_fam(f: &IsotopyFamily) -> String {
    let mut out = format!("{FAM_HEADER}\n");
    for l in &f.lines {
        out.push_str(&format!("{}: fline {} ; {} ; {}\n", l.label, l.a, l.b, l.c));
    }
    let samples: Vec<String> = f.samples.iter().map(fmt_rational).collect();
    out.push_str(&format!("samples {}\n", samples.join(" ")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::isotopy::{family_from_proof, paper_diffeo_parameters, FamilyKind};
    use crate::constructions::paper::paper_b_inf;
    use crate::rational::{int, rat, GaussianRational};

    #[test]
    fn parses_both_declarations() {
        let a = parse_arr("arr v1\n# two lines\nH1: factor y+3x+1\nline 1 -1/2 3+1/2i # complex\n").unwrap();
        assert_eq!(a.labels(), ["H1", "L2"]);
        assert_eq!(a.lines()[0].slope(), Some(int(-3)));
        assert_eq!(a.lines()[1].c, GaussianRational::new(int(3), rat(1, 2)));
    }

    #[test]
    fn round_trips() {
        let b = paper_b_inf();
        assert_eq!(parse_arr(&render_arr(&b)).unwrap(), b);
        let f = family_from_proof(FamilyKind::G1, &paper_diffeo_parameters()).unwrap();
        assert_eq!(parse_fam(&render_fam(&f)).unwrap(), f);
    }

    #[test]
    fn reports_positions() {
        let e = parse_arr("arr v1\nfactor y+3x+$\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, column: 13, message: "unexpected character `$`".into() });
        let e = parse_arr("arr v1\n  line 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 8, .. }), "{e:?}");
        let e = parse_arr("arr 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 1, .. }));
        let e = parse_arr("arr v1\nbogus x\n").unwrap_err();
        assert!(e.to_string().contains("bogus"));
        let e = parse_arr("arr v1\nA: factor x\nA: factor y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_arr("arr v1\nline 0 0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn family_file() {
        let f = parse_fam("fam v1\nfline 1 ; 0 ; 0\nfline 0 ; 1 ; 5*t - (t - t^2)i\nsamples 0 1/2 1\n").unwrap();
        assert_eq!(f.labels(), ["L1", "L2"]);
        assert_eq!(f.samples, [int(0), rat(1, 2), int(1)]);
        let e = parse_fam("fam v1\nfline 1 ; 0 ; x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 15, .. }), "{e:?}");
    }
}
