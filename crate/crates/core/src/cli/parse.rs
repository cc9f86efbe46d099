//! Line-oriented input formats. `#` starts a comment; blank lines are
//! ignored.
//!
//! AR presentation:
//!
//! ```text
//! modules: 2
//! seq end=1 tau=1 middle=1,0
//! ```
//!
//! Ring specification (a product adds `factor` lines):
//!
//! ```text
//! ring kind=matrix n=2 p=2
//! factor n=1 p=5
//! ```

use crate::ar_quiver::{ArPresentation, ArSequence};
use crate::error::{Error, Result};
use crate::semilocal::{FiniteRing, MatrixFactor};

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    col: usize,
    text: &'a str,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn error(&self, col: usize, message: impl Into<String>) -> Error {
        Error::Parse { line: self.number, column: col, message: message.into() }
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token { col: content[..s].chars().count() + 1, text: &content[s..pos] });
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
    })
}

/// Splits `key=value`, returning the value and its column.
fn key_value<'a>(line: &Line<'_>, tok: Token<'a>) -> Result<(&'a str, &'a str, usize)> {
    match tok.text.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k, v, tok.col + k.chars().count() + 1)),
        _ => Err(line.error(tok.col, format!("expected key=value, found {:?}", tok.text))),
    }
}

fn number<T: std::str::FromStr>(line: &Line<'_>, col: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| line.error(col, format!("{what} must be a nonnegative integer, found {s:?}")))
}

pub fn parse_ar_presentation(text: &str) -> Result<ArPresentation> {
    let mut modules: Option<usize> = None;
    let mut seqs = Vec::new();
    let mut last_line = 0;
    for line in lines(text) {
        last_line = line.number;
        let head = line.tokens[0];
        match head.text {
            "modules:" | "modules" => {
                if modules.is_some() {
                    return Err(line.error(head.col, "duplicate modules line"));
                }
                let Some(tok) = line.tokens.get(1) else {
                    return Err(line.error(head.col + head.text.len(), "expected the module count t+1"));
                };
                if let Some(extra) = line.tokens.get(2) {
                    return Err(line.error(extra.col, "unexpected token after the module count"));
                }
                let n: usize = number(&line, tok.col, tok.text, "module count")?;
                if n < 2 {
                    return Err(line.error(tok.col, "need at least two modules (R and one non-free)"));
                }
                modules = Some(n);
            }
            "seq" => {
                let Some(n) = modules else {
                    return Err(line.error(head.col, "seq before the modules line"));
                };
                let (mut end, mut tau, mut middle) = (None, None, None);
                for &tok in &line.tokens[1..] {
                    let (k, v, vcol) = key_value(&line, tok)?;
                    match k {
                        "end" => end = Some((number::<usize>(&line, vcol, v, "end")?, vcol)),
                        "tau" => tau = Some((number::<usize>(&line, vcol, v, "tau")?, vcol)),
                        "middle" => {
                            let mut col = vcol;
                            let mut mults = Vec::new();
                            for part in v.split(',') {
                                mults.push(number::<u64>(&line, col, part, "multiplicity")?);
                                col += part.chars().count() + 1;
                            }
                            if mults.len() != n {
                                return Err(line.error(vcol, format!("expected {n} multiplicities, found {}", mults.len())));
                            }
                            middle = Some(mults);
                        }
                        other => return Err(line.error(tok.col, format!("unknown key {other:?}"))),
                    }
                }
                let eol = line.tokens.last().map_or(1, |t| t.col + t.text.len());
                let (end, end_col) = end.ok_or_else(|| line.error(eol, "missing end=<j>"))?;
                let (tau, tau_col) = tau.ok_or_else(|| line.error(eol, "missing tau=<i>"))?;
                let middle = middle.ok_or_else(|| line.error(eol, "missing middle=<n0,...,nt>"))?;
                if end == 0 || end >= n {
                    return Err(line.error(end_col, format!("end must lie in 1..={}", n - 1)));
                }
                if tau == 0 || tau >= n {
                    return Err(line.error(tau_col, format!("tau must lie in 1..={}", n - 1)));
                }
                seqs.push(ArSequence::new(end, tau, middle));
            }
            other => return Err(line.error(head.col, format!("expected 'modules:' or 'seq', found {other:?}"))),
        }
    }
    let Some(n) = modules else {
        return Err(Error::Parse { line: last_line.max(1), column: 1, message: "missing modules line".into() });
    };
    ArPresentation::new(n, seqs).map_err(|e| Error::Parse { line: last_line.max(1), column: 1, message: e.to_string() })
}

fn factor_from(line: &Line<'_>, tokens: &[Token<'_>], allow_kind: bool) -> Result<(Option<String>, Option<MatrixFactor>)> {
    let (mut kind, mut n, mut p) = (None, None, None);
    for &tok in tokens {
        let (k, v, vcol) = key_value(line, tok)?;
        match k {
            "kind" if allow_kind => kind = Some((v.to_string(), vcol)),
            "n" => n = Some((number::<usize>(line, vcol, v, "n")?, vcol)),
            "p" => p = Some((number::<u64>(line, vcol, v, "p")?, vcol)),
            other => return Err(line.error(tok.col, format!("unknown key {other:?}"))),
        }
    }
    let eol = line.tokens.last().map_or(1, |t| t.col + t.text.len());
    let factor = match (n, p) {
        (Some((n, ncol)), Some((p, pcol))) => Some(MatrixFactor::new(n, p).map_err(|e| {
            let col = if matches!(e, Error::InvalidField(_)) { pcol } else { ncol };
            line.error(col, e.to_string())
        })?),
        (None, None) => None,
        _ => return Err(line.error(eol, "need both n=<n> and p=<p>")),
    };
    if let Some((k, kcol)) = &kind {
        if k != "matrix" && k != "product" {
            return Err(line.error(*kcol, format!("kind must be matrix or product, found {k:?}")));
        }
    }
    Ok((kind.map(|(k, _)| k), factor))
}

pub fn parse_ring_spec(text: &str) -> Result<FiniteRing> {
    let mut factors = Vec::new();
    let mut seen_ring = false;
    let mut last_line = 0;
    for line in lines(text) {
        last_line = line.number;
        let head = line.tokens[0];
        match head.text {
            "ring" => {
                if seen_ring {
                    return Err(line.error(head.col, "duplicate ring line"));
                }
                seen_ring = true;
                let (kind, factor) = factor_from(&line, &line.tokens[1..], true)?;
                match (kind.as_deref().unwrap_or("matrix"), factor) {
                    ("matrix", Some(f)) => factors.push(f),
                    ("matrix", None) => return Err(line.error(head.col, "kind=matrix needs n=<n> p=<p>")),
                    ("product", None) => {}
                    (_, Some(_)) => return Err(line.error(head.col, "kind=product takes its factors from factor lines")),
                    _ => unreachable!("kind validated"),
                }
            }
            "factor" => {
                if !seen_ring {
                    return Err(line.error(head.col, "factor before the ring line"));
                }
                match factor_from(&line, &line.tokens[1..], false)? {
                    (_, Some(f)) => factors.push(f),
                    _ => return Err(line.error(head.col + head.text.len(), "factor needs n=<n> p=<p>")),
                }
            }
            other => return Err(line.error(head.col, format!("expected 'ring' or 'factor', found {other:?}"))),
        }
    }
    if !seen_ring {
        return Err(Error::Parse { line: last_line.max(1), column: 1, message: "missing ring line".into() });
    }
    FiniteRing::new(factors).map_err(|e| match e {
        Error::Internal(_) => e,
        other => Error::Parse { line: last_line.max(1), column: 1, message: other.to_string() },
    })
}
