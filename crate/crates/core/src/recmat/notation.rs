//! Text notation for presentations, one state per line:
//!
//! ```text
//! Z1 = 1, (Z1, Z2; Z3, 0)
//! D2 = -1, (3*D1; 1/3*D2)
//! V2 = 1, (V1, -i*V1 + (1+i)*V2; -i*V1 + (1+i)*V2, -V1)
//! ```
//!
//! The value after `=` is the level-0 entry; the parenthesized block lists
//! the four quarter shifts as linear combinations of states. A two-entry
//! block `(a; d)` is diagonal. Blank lines and lines starting with `#` are
//! skipped. The first state is the designated element.

use super::{Presentation, ShiftMatrix};
use crate::error::{Error, Result};
use crate::linalg::{unit_vec, SparseVec};
use crate::scalar::{Field, Scalar};

struct Line<'a> {
    name: &'a str,
    init: &'a str,
    blocks: [&'a str; 4],
    offset: usize,
}

/// Splits on `sep` outside parentheses.
fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_line(line: &str, offset: usize) -> Result<Line<'_>> {
    let err = |msg: &str| Error::parse(offset, msg.to_string());
    let (name, rest) = line.split_once('=').ok_or_else(|| err("expected `=`"))?;
    let open = rest.find('(').ok_or_else(|| err("expected `(`"))?;
    let init = rest[..open]
        .trim()
        .strip_suffix(',')
        .ok_or_else(|| err("expected `,` after initial value"))?;
    let body = rest[open..].trim();
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| err("unbalanced block"))?;
    let rows = split_top(body, ';');
    let blocks = match rows.as_slice() {
        [a, d] if split_top(a, ',').len() == 1 && split_top(d, ',').len() == 1 => {
            [*a, "0", "0", *d]
        }
        [r0, r1] => {
            let (c0, c1) = (split_top(r0, ','), split_top(r1, ','));
            if c0.len() != 2 || c1.len() != 2 {
                return Err(err("block rows must have two entries"));
            }
            [c0[0], c0[1], c1[0], c1[1]]
        }
        _ => return Err(err("block must have two rows")),
    };
    Ok(Line {
        name: name.trim(),
        init: init.trim(),
        blocks,
        offset,
    })
}

/// Parses `c*Name + c*Name - Name ...`; a bare `0` is the zero combination.
fn parse_combination(
    text: &str,
    field: Field,
    names: &[&str],
    offset: usize,
) -> Result<SparseVec> {
    let text = text.trim();
    let err = |msg: String| Error::parse(offset, msg);
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    if text == "0" {
        return Ok(out);
    }
    // split into signed terms at top-level + and -
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut depth = 0;
    let mut current = String::new();
    let mut negative = false;
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth -= 1;
                current.push(c);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() {
                    if c == '-' {
                        negative = !negative;
                    }
                } else {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = c == '-';
                }
            }
            _ => current.push(c),
        }
    }
    if current.trim().is_empty() {
        return Err(err(format!("dangling sign in `{text}`")));
    }
    terms.push((negative, current));
    for (neg, term) in terms {
        let mut coeff = Scalar::one(field);
        let mut state = None;
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(err(format!("empty factor in `{term}`")));
            }
            if let Some(j) = names.iter().position(|n| *n == factor) {
                if state.replace(j).is_some() {
                    return Err(err(format!("two states in term `{term}`")));
                }
                continue;
            }
            let literal = factor
                .strip_prefix('(')
                .and_then(|f| f.strip_suffix(')'))
                .unwrap_or(factor);
            let value = Scalar::parse(literal, field)
                .map_err(|_| err(format!("unknown state or scalar `{factor}`")))?;
            coeff = &coeff * &value;
        }
        let j = state.ok_or_else(|| err(format!("term `{term}` names no state")))?;
        if neg {
            coeff = -coeff;
        }
        match out.iter_mut().find(|(i, _)| *i == j) {
            Some((_, v)) => *v = &*v + &coeff,
            None => out.push((j, coeff)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}

/// Parses a presentation written in the notation above.
pub fn parse_notation(field: Field, text: &str) -> Result<Presentation> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split('\n') {
        let trimmed = raw.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            lines.push(parse_line(trimmed, offset)?);
        }
        offset += raw.len() + 1;
    }
    let names: Vec<&str> = lines.iter().map(|l| l.name).collect();
    let a = names.len();
    let mut init = Vec::with_capacity(a);
    let mut cols: [Vec<SparseVec>; 4] = Default::default();
    for line in &lines {
        init.push(Scalar::parse(line.init, field).map_err(|e| match e {
            Error::Parse { message, .. } => Error::parse(line.offset, message),
            other => other,
        })?);
        for (x, block) in line.blocks.iter().enumerate() {
            cols[x].push(parse_combination(block, field, &names, line.offset)?);
        }
    }
    let shifts = cols.map(|c| ShiftMatrix::from_columns(a, c));
    let select = if a == 0 {
        Vec::new()
    } else {
        unit_vec(field, a, 0)
    };
    Presentation::new(
        field,
        init,
        shifts,
        select,
        names.iter().map(|s| s.to_string()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations() {
        let names = ["V1", "V2"];
        let g = Field::Gaussian;
        let c = parse_combination("-i*V1 + (1+i)*V2", g, &names, 0).unwrap();
        assert_eq!(c[0], (0, Scalar::parse("-i", g).unwrap()));
        assert_eq!(c[1], (1, Scalar::parse("1+i", g).unwrap()));
        let c = parse_combination("-V1", g, &names, 0).unwrap();
        assert_eq!(c, vec![(0, Scalar::parse("-1", g).unwrap())]);
        let c = parse_combination("V1 - V1", g, &names, 0).unwrap();
        assert!(c.is_empty());
        assert!(parse_combination("V3", g, &names, 0).is_err());
        assert!(parse_combination("V1 +", g, &names, 0).is_err());
    }

    #[test]
    fn diagonal_and_full_blocks() {
        let p = parse_notation(
            Field::Rational,
            "D1 = 1, (D1; D2)\nD2 = -1, (3*D1; 1/3*D2)\n",
        )
        .unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.shift_matrix(0, 1).is_zero());
        let m = p.materialize(2);
        let d: Vec<String> = m.diag().iter().map(|x| x.to_string()).collect();
        assert_eq!(d, ["1", "-1", "3", "-1/3"]);
        assert!(m.is_diagonal());
    }
}
