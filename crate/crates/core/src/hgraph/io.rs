//! hMetis hypergraph files.
//!
//! ```text
//! % comment
//! m n [fmt]
//! [w] p1 p2 ...      one line per hyperedge, 1-based pins
//! c                  one line per vertex when fmt is 10 or 11
//! ```
//!
//! `fmt` is absent, `1` (edge weights), `10` (vertex weights) or `11`
//! (both).

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hgraph::{Hypergraph, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HmetisFormat {
    Unweighted,
    EdgeWeights,
    VertexWeights,
    Both,
}

impl HmetisFormat {
    pub fn from_code(code: Option<&str>) -> Option<Self> {
        match code {
            None => Some(Self::Unweighted),
            Some("1") => Some(Self::EdgeWeights),
            Some("10") => Some(Self::VertexWeights),
            Some("11") => Some(Self::Both),
            Some(_) => None,
        }
    }

    pub fn code(self) -> Option<&'static str> {
        match self {
            Self::Unweighted => None,
            Self::EdgeWeights => Some("1"),
            Self::VertexWeights => Some("10"),
            Self::Both => Some("11"),
        }
    }

    pub fn has_edge_weights(self) -> bool {
        matches!(self, Self::EdgeWeights | Self::Both)
    }

    pub fn has_vertex_weights(self) -> bool {
        matches!(self, Self::VertexWeights | Self::Both)
    }

    /// Smallest format that represents `h` without loss.
    pub fn detect(h: &Hypergraph) -> Self {
        let edges = h.edge_weights().iter().any(|&w| w != 1);
        let vertices = h.vertex_weights().iter().any(|&w| w != 1);
        match (edges, vertices) {
            (false, false) => Self::Unweighted,
            (true, false) => Self::EdgeWeights,
            (false, true) => Self::VertexWeights,
            (true, true) => Self::Both,
        }
    }
}

/// A parsed file: the hypergraph plus the format code found in its header.
#[derive(Clone, Debug)]
pub struct HmetisFile {
    pub hypergraph: Hypergraph,
    pub format: HmetisFormat,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_weight(tok: &str, line: usize) -> Result<Weight> {
    if tok.starts_with('-') {
        return Err(parse_err(line, format!("negative weight {tok}")));
    }
    tok.parse::<Weight>()
        .map_err(|_| parse_err(line, format!("invalid weight {tok:?} (expected a nonnegative integer)")))
}

pub fn parse_hmetis<R: Read>(reader: R) -> Result<HmetisFile> {
    let mut lines = BufReader::new(reader)
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| match l {
            Ok(s) => {
                let t = s.trim();
                !t.is_empty() && !t.starts_with('%')
            }
            Err(_) => true,
        });
    let mut next_line = move || -> Result<Option<(usize, String)>> {
        match lines.next() {
            None => Ok(None),
            Some((no, Ok(s))) => Ok(Some((no, s))),
            Some((_, Err(e))) => Err(e.into()),
        }
    };

    let (hline, header) = next_line()?.ok_or_else(|| parse_err(0, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 2 || tokens.len() > 3 {
        return Err(parse_err(hline, "header must be `m n [fmt]`"));
    }
    let m: usize = tokens[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid edge count {:?}", tokens[0])))?;
    let n: usize = tokens[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("invalid vertex count {:?}", tokens[1])))?;
    let format = HmetisFormat::from_code(tokens.get(2).copied())
        .ok_or_else(|| parse_err(hline, format!("unsupported fmt {:?}", tokens[2])))?;

    let mut pins_lists = Vec::with_capacity(m);
    let mut edge_weights = Vec::with_capacity(m);
    for e in 0..m {
        let (no, line) = next_line()?.ok_or_else(|| parse_err(0, format!("expected {m} hyperedges, found {e}")))?;
        let mut toks = line.split_whitespace();
        let w = if format.has_edge_weights() {
            parse_weight(toks.next().unwrap_or_default(), no)?
        } else {
            1
        };
        let mut pins = Vec::new();
        for tok in toks {
            let pin: usize = tok.parse().map_err(|_| parse_err(no, format!("invalid pin {tok:?}")))?;
            if pin == 0 || pin > n {
                return Err(parse_err(no, format!("pin {pin} out of range 1..={n}")));
            }
            pins.push((pin - 1) as u32);
        }
        pins_lists.push(pins);
        edge_weights.push(w);
    }

    let mut vertex_weights = vec![1; n];
    if format.has_vertex_weights() {
        for (v, slot) in vertex_weights.iter_mut().enumerate() {
            let (no, line) =
                next_line()?.ok_or_else(|| parse_err(0, format!("expected {n} vertex weights, found {v}")))?;
            let mut toks = line.split_whitespace();
            *slot = parse_weight(toks.next().unwrap_or_default(), no)?;
            if toks.next().is_some() {
                return Err(parse_err(no, "expected a single vertex weight"));
            }
        }
    }
    if let Some((no, _)) = next_line()? {
        return Err(parse_err(no, "unexpected trailing content"));
    }

    let hypergraph = Hypergraph::build(&pins_lists, &edge_weights, &vertex_weights)?;
    Ok(HmetisFile { hypergraph, format })
}

pub fn read_hmetis(path: impl AsRef<Path>) -> Result<HmetisFile> {
    parse_hmetis(std::fs::File::open(path)?)
}

/// Renders `h`; `format` defaults to [`HmetisFormat::detect`].
pub fn to_hmetis_string(h: &Hypergraph, format: Option<HmetisFormat>) -> String {
    let format = format.unwrap_or_else(|| HmetisFormat::detect(h));
    let mut out = String::with_capacity(16 + 8 * h.num_pins());
    match format.code() {
        Some(code) => writeln!(out, "{} {} {}", h.num_edges(), h.num_vertices(), code),
        None => writeln!(out, "{} {}", h.num_edges(), h.num_vertices()),
    }
    .unwrap();
    for (pins, w) in h.edges() {
        let mut first = true;
        if format.has_edge_weights() {
            write!(out, "{w}").unwrap();
            first = false;
        }
        for &p in pins {
            if !first {
                out.push(' ');
            }
            write!(out, "{}", p + 1).unwrap();
            first = false;
        }
        out.push('\n');
    }
    if format.has_vertex_weights() {
        for &c in h.vertex_weights() {
            writeln!(out, "{c}").unwrap();
        }
    }
    out
}

pub fn write_hmetis<W: Write>(h: &Hypergraph, format: Option<HmetisFormat>, mut writer: W) -> Result<()> {
    writer.write_all(to_hmetis_string(h, format).as_bytes())?;
    Ok(())
}

pub fn save_hmetis(h: &Hypergraph, format: Option<HmetisFormat>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_hmetis_string(h, format))?;
    Ok(())
}
