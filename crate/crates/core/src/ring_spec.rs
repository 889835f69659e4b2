//! Textual ring specifications: `nc_p2:p=3`, `mat2:p=2`, `ut2:p=5`, `zn:n=6`,
//! `prod(ut2:p=2,zn:n=3)` and `file:path/to/table.json`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::ring::{
    direct_product, matrix_ring_2x2, ring_from_table_json, ring_noncomm_p2, ring_zn,
    upper_triangular_ring, FiniteRing, TableOptions,
};

pub fn parse_ring_spec(spec: &str) -> Result<FiniteRing> {
    let s = spec.trim();
    let fail = |reason: &str| Error::RingSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if let Some(path) = s.strip_prefix("file:") {
        let text = std::fs::read_to_string(Path::new(path))?;
        return ring_from_table_json(&text, TableOptions::default());
    }
    if let Some(inner) = s.strip_prefix("prod(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| fail("missing closing parenthesis"))?;
        let (left, right) = split_top_level(inner).ok_or_else(|| fail("prod needs two comma-separated factors"))?;
        return direct_product(&parse_ring_spec(left)?, &parse_ring_spec(right)?);
    }
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| fail("expected KIND:KEY=VALUE, prod(A,B) or file:PATH"))?;
    let (key, value) = arg.split_once('=').ok_or_else(|| fail("expected KEY=VALUE"))?;
    let value: u64 = value
        .trim()
        .parse()
        .map_err(|_| fail("parameter is not a nonnegative integer"))?;
    match (kind.trim(), key.trim()) {
        ("nc_p2", "p") => ring_noncomm_p2(value),
        ("mat2", "p") => matrix_ring_2x2(value),
        ("ut2", "p") => upper_triangular_ring(value),
        ("zn", "n") => ring_zn(value),
        ("nc_p2" | "mat2" | "ut2", _) => Err(fail("this ring family takes p")),
        ("zn", _) => Err(fail("zn takes n")),
        _ => Err(fail("unknown ring family (nc_p2, mat2, ut2, zn, prod, file)")),
    }
}

/// Splits `a,b` at the single comma outside any parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return None;
                }
                split = Some(i);
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    let i = split?;
    (depth == 0).then(|| (&s[..i], &s[i + 1..]))
}
