//! The matroid text file format.
//!
//! Line-oriented UTF-8; `#` starts a full-line comment. The first
//! significant line declares the kind, the rest depends on it:
//!
//! ```text
//! kind: uniform          kind: graphic            kind: linear-gf2
//! k: 2                   vertices: 4              cols: 1 2 3 4
//! n: 4                   edge: e1 0 1             1010
//!                        edge: e2 1 2             0110
//! ```
//!
//! `linear-rational` follows `linear-gf2` but with `p/q` tokens separated
//! by whitespace. Element order is file order (edges) or column order, and
//! endpoints are 0-based vertex indices. All errors carry the line number.

use std::fmt;
use std::fs;
use std::path::Path;

use serex_core::harness::NamedMatroid;
use serex_core::matroid::Matroid;
use serex_core::{ElementId, ElementSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn load_matroid_file(path: &Path) -> Result<NamedMatroid, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_matroid_str(&name, &text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_matroid_str(name: &str, text: &str) -> Result<NamedMatroid, ParseError> {
    let mut kind: Option<(usize, String)> = None;
    let mut ints: Vec<(usize, String, String)> = Vec::new(); // k, n, vertices
    let mut edges: Vec<(usize, String, u32, u32)> = Vec::new();
    let mut cols: Option<(usize, Vec<String>)> = None;
    let mut matrix_rows: Vec<(usize, String)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        last_line = line;
        if let Some((key, value)) = trimmed.split_once(':') {
            let key = key.trim();
            let value = value.trim();
            match key {
                "kind" => {
                    if kind.is_some() {
                        return Err(ParseError::new(line, "duplicate 'kind'"));
                    }
                    kind = Some((line, value.to_string()));
                }
                "k" | "n" | "vertices" => {
                    ints.push((line, key.to_string(), value.to_string()));
                }
                "edge" => {
                    let tokens: Vec<&str> = value.split_whitespace().collect();
                    if tokens.len() != 3 {
                        return Err(ParseError::new(
                            line,
                            "expected 'edge: <label> <u> <v>'",
                        ));
                    }
                    let u = parse_u32(line, tokens[1])?;
                    let v = parse_u32(line, tokens[2])?;
                    edges.push((line, tokens[0].to_string(), u, v));
                }
                "cols" => {
                    if cols.is_some() {
                        return Err(ParseError::new(line, "duplicate 'cols'"));
                    }
                    let labels: Vec<String> =
                        value.split_whitespace().map(str::to_string).collect();
                    if labels.is_empty() {
                        return Err(ParseError::new(line, "'cols' lists no labels"));
                    }
                    cols = Some((line, labels));
                }
                other => {
                    return Err(ParseError::new(line, format!("unknown key '{other}'")));
                }
            }
        } else {
            matrix_rows.push((line, trimmed.to_string()));
        }
    }

    let (kind_line, kind) =
        kind.ok_or_else(|| ParseError::new(last_line.max(1), "missing 'kind' line"))?;

    let get_int = |name: &str| -> Result<u32, ParseError> {
        let found: Vec<_> = ints.iter().filter(|(_, k, _)| k == name).collect();
        match found.as_slice() {
            [] => Err(ParseError::new(
                last_line,
                format!("missing '{name}' for kind {kind}"),
            )),
            [(line, _, value)] => parse_u32(*line, value),
            _ => Err(ParseError::new(found[1].0, format!("duplicate '{name}'"))),
        }
    };
    let reject_rows = || -> Result<(), ParseError> {
        if let Some((line, _)) = matrix_rows.first() {
            return Err(ParseError::new(*line, format!("unexpected matrix row for kind {kind}")));
        }
        Ok(())
    };

    match kind.as_str() {
        "uniform" => {
            reject_rows()?;
            if !edges.is_empty() || cols.is_some() {
                return Err(ParseError::new(kind_line, "uniform takes only 'k' and 'n'"));
            }
            let k = get_int("k")?;
            let n = get_int("n")?;
            let matroid = Matroid::uniform(k, n)
                .map_err(|e| ParseError::new(kind_line, e.to_string()))?;
            Ok(NamedMatroid {
                name: name.to_string(),
                labels: (1..=n).map(|i| i.to_string()).collect(),
                matroid,
            })
        }
        "graphic" => {
            reject_rows()?;
            let vertices = get_int("vertices")?;
            if edges.is_empty() {
                return Err(ParseError::new(last_line, "graphic matroid without edges"));
            }
            let mut labels = Vec::with_capacity(edges.len());
            let mut list = Vec::with_capacity(edges.len());
            for (line, label, u, v) in &edges {
                if labels.contains(label) {
                    return Err(ParseError::new(*line, format!("duplicate label '{label}'")));
                }
                if *u >= vertices || *v >= vertices {
                    return Err(ParseError::new(
                        *line,
                        format!("endpoint out of range (vertices are 0..{vertices})"),
                    ));
                }
                labels.push(label.clone());
                list.push((*u, *v));
            }
            let matroid = Matroid::graphic(vertices, list)
                .map_err(|e| ParseError::new(kind_line, e.to_string()))?;
            Ok(NamedMatroid {
                name: name.to_string(),
                labels,
                matroid,
            })
        }
        "linear-gf2" | "linear-rational" => {
            let (cols_line, labels) = cols.ok_or_else(|| {
                ParseError::new(last_line, format!("missing 'cols' for kind {kind}"))
            })?;
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(ParseError::new(cols_line, format!("duplicate label '{l}'")));
                }
            }
            if matrix_rows.is_empty() {
                return Err(ParseError::new(last_line, "matrix has no rows"));
            }
            let matroid = if kind == "linear-gf2" {
                let mut packed = vec![0u64; labels.len()];
                if matrix_rows.len() > 64 {
                    return Err(ParseError::new(matrix_rows[64].0, "more than 64 rows"));
                }
                for (r, (line, row)) in matrix_rows.iter().enumerate() {
                    let bits: Vec<char> =
                        row.chars().filter(|c| !c.is_whitespace()).collect();
                    if bits.len() != labels.len() {
                        return Err(ParseError::new(
                            *line,
                            format!("row has {} bits, expected {}", bits.len(), labels.len()),
                        ));
                    }
                    for (c, ch) in bits.iter().enumerate() {
                        match ch {
                            '0' => {}
                            '1' => packed[c] |= 1u64 << r,
                            _ => {
                                return Err(ParseError::new(
                                    *line,
                                    format!("invalid bit character '{ch}'"),
                                ))
                            }
                        }
                    }
                }
                Matroid::linear_gf2(matrix_rows.len() as u32, packed)
                    .map_err(|e| ParseError::new(kind_line, e.to_string()))?
            } else {
                let mut rows = Vec::with_capacity(matrix_rows.len());
                for (line, row) in &matrix_rows {
                    let entries = row
                        .split_whitespace()
                        .map(|tok| {
                            serex_core::matroid::parse_rational(tok)
                                .map_err(|e| ParseError::new(*line, e.to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if entries.len() != labels.len() {
                        return Err(ParseError::new(
                            *line,
                            format!("row has {} entries, expected {}", entries.len(), labels.len()),
                        ));
                    }
                    rows.push(entries);
                }
                Matroid::linear_rational(rows)
                    .map_err(|e| ParseError::new(kind_line, e.to_string()))?
            };
            Ok(NamedMatroid {
                name: name.to_string(),
                labels,
                matroid,
            })
        }
        other => Err(ParseError::new(
            kind_line,
            format!("unknown kind '{other}' (expected uniform, graphic, linear-gf2, linear-rational)"),
        )),
    }
}

fn parse_u32(line: usize, token: &str) -> Result<u32, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected a non-negative integer, got '{token}'")))
}

/// Resolves a comma-separated list of external labels to element ids.
pub fn resolve_elements(labels: &[String], list: &str) -> Result<ElementSet, String> {
    let mut set = ElementSet::EMPTY;
    for token in list.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err("empty element label in list".to_string());
        }
        let idx = labels
            .iter()
            .position(|l| l == token)
            .ok_or_else(|| format!("unknown element label '{token}'"))?;
        let id = ElementId(idx as u32);
        if set.contains(id) {
            return Err(format!("element '{token}' listed twice"));
        }
        set = set.with(id);
    }
    Ok(set)
}

/// Renders a set through its label table, ascending by id.
pub fn render_set(labels: &[String], set: ElementSet) -> String {
    let parts: Vec<&str> = set.iter().map(|e| labels[e.index()].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_kinds() {
        let u = parse_matroid_str("u", "kind: uniform\nk: 2\nn: 4\n").unwrap();
        assert_eq!(u.matroid.full_rank(), 2);
        assert_eq!(u.labels, vec!["1", "2", "3", "4"]);

        let g = parse_matroid_str(
            "g",
            "# comment\nkind: graphic\nvertices: 3\nedge: a 0 1\nedge: b 1 2\nedge: c 0 2\n",
        )
        .unwrap();
        assert_eq!(g.matroid.full_rank(), 2);
        assert_eq!(g.labels, vec!["a", "b", "c"]);

        let m = parse_matroid_str("m", "kind: linear-gf2\ncols: x y z\n101\n011\n").unwrap();
        assert_eq!(m.matroid.full_rank(), 2);

        let q = parse_matroid_str(
            "q",
            "kind: linear-rational\ncols: c1 c2 c3\n1 0 1/2\n0 1 -3\n",
        )
        .unwrap();
        assert_eq!(q.matroid.full_rank(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("kind: nonsense\n", 1, "unknown kind"),
            ("kind: uniform\nk: 2\n", 2, "missing 'n'"),
            ("kind: uniform\nk: x\nn: 4\n", 2, "non-negative integer"),
            ("kind: graphic\nvertices: 2\nedge: a 0 5\n", 3, "out of range"),
            ("kind: graphic\nvertices: 2\nedge: a 0 1\nedge: a 1 0\n", 4, "duplicate label"),
            ("kind: graphic\nvertices: 2\nedge: a 0\n", 3, "expected 'edge:"),
            ("kind: linear-gf2\ncols: x y\n10\n1\n", 4, "expected 2"),
            ("kind: linear-gf2\ncols: x y\n1x\n", 3, "invalid bit"),
            ("kind: linear-gf2\ncols: x x\n11\n", 2, "duplicate label"),
            ("kind: linear-rational\ncols: x y\n1 1/0\n", 3, "invalid rational"),
            ("k: 2\nn: 4\n", 2, "missing 'kind'"),
            ("kind: uniform\nwhat: 3\n", 2, "unknown key"),
            ("kind: uniform\nk: 5\nn: 4\n", 1, "exceeds ground size"),
        ];
        for (text, line, needle) in cases {
            let err = parse_matroid_str("t", text).unwrap_err();
            assert_eq!(err.line, *line, "for {text:?}: {err}");
            assert!(
                err.message.contains(needle),
                "expected '{needle}' in '{}' for {text:?}",
                err.message
            );
        }
    }

    #[test]
    fn element_resolution() {
        let labels: Vec<String> = ["e1", "e2", "e3"].iter().map(|s| s.to_string()).collect();
        let set = resolve_elements(&labels, "e3,e1").unwrap();
        assert_eq!(render_set(&labels, set), "{e1,e3}");
        assert!(resolve_elements(&labels, "e9").is_err());
        assert!(resolve_elements(&labels, "e1,e1").is_err());
        assert!(resolve_elements(&labels, "e1,,e2").is_err());
    }
}
