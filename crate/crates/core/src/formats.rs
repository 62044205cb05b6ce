//! Plain-text and JSON descriptions of lattices, involutions and triples.
//!
//! A document is a sequence of blocks separated by blank lines:
//!
//! ```text
//! lattice U
//! rank 2
//! gram
//! 0 1
//! 1 0
//!
//! involution swap on U
//! matrix
//! 0 1
//! 1 0
//!
//! triple demo
//! lattice U
//! tau swap
//! sigma swap
//! ```
//!
//! Lines starting with `#` are comments. The same document can be given as
//! JSON (detected by a leading `{`) with fields mirroring the keywords:
//! `{"lattices": [{"lattice": ..., "rank": ..., "gram": ...}], ...}`.
//! Rendering is canonical, so emitting, parsing and emitting again
//! reproduces the file byte for byte.

use std::str::FromStr;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::error::Error;
use crate::invol::Involution;
use crate::lattice::Lattice;
use crate::linalg::{Int, IntMatrix};

/// A named involution block; the matrix is resolved against the referenced
/// lattice on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionBlock {
    pub name: String,
    pub lattice: String,
    pub matrix: IntMatrix,
}

/// A triple block referencing a lattice and two involutions by name.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleBlock {
    pub name: String,
    pub lattice: String,
    pub tau: String,
    pub sigma: String,
}

/// A parsed fixture file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Document {
    pub lattices: Vec<Lattice>,
    pub involutions: Vec<InvolutionBlock>,
    pub triples: Vec<TripleBlock>,
}

impl Document {
    pub fn lattice(&self, name: &str) -> Result<&Lattice, Error> {
        self.lattices
            .iter()
            .find(|l| l.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown lattice '{name}'")))
    }

    pub fn first_lattice(&self) -> Result<&Lattice, Error> {
        self.lattices
            .first()
            .ok_or_else(|| Error::Parse("document contains no lattice block".into()))
    }

    pub fn involution_block(&self, name: &str) -> Result<&InvolutionBlock, Error> {
        self.involutions
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown involution '{name}'")))
    }

    fn build_involution(&self, block: &InvolutionBlock) -> Result<Involution, Error> {
        let l = self.lattice(&block.lattice)?;
        Involution::new(l, block.matrix.clone())
    }

    pub fn involution(&self, name: &str) -> Result<Involution, Error> {
        self.build_involution(self.involution_block(name)?)
    }

    pub fn first_involution(&self) -> Result<Involution, Error> {
        let block = self
            .involutions
            .first()
            .ok_or_else(|| Error::Parse("document contains no involution block".into()))?;
        self.build_involution(block)
    }

    /// Resolves a triple block into its two involutions, `tau` first.
    pub fn triple(&self, name: Option<&str>) -> Result<(Involution, Involution), Error> {
        let block = match name {
            Some(n) => self
                .triples
                .iter()
                .find(|t| t.name == n)
                .ok_or_else(|| Error::Parse(format!("unknown triple '{n}'")))?,
            None => self
                .triples
                .first()
                .ok_or_else(|| Error::Parse("document contains no triple block".into()))?,
        };
        self.lattice(&block.lattice)?;
        for inv_name in [&block.tau, &block.sigma] {
            let b = self.involution_block(inv_name)?;
            if b.lattice != block.lattice {
                return Err(Error::Parse(format!(
                    "involution '{}' acts on '{}' but the triple expects '{}'",
                    inv_name, b.lattice, block.lattice
                )));
            }
        }
        Ok((
            self.involution(&block.tau)?,
            self.involution(&block.sigma)?,
        ))
    }
}

fn parse_int(tok: &str, line_no: usize) -> Result<Int, Error> {
    Int::from_str(tok)
        .map_err(|_| Error::Parse(format!("line {line_no}: bad integer '{tok}'")))
}

fn parse_int_row(line: &str, line_no: usize) -> Result<Vec<Int>, Error> {
    line.split_whitespace()
        .map(|tok| parse_int(tok, line_no))
        .collect()
}

fn looks_numeric(line: &str) -> bool {
    line.split_whitespace()
        .next()
        .is_some_and(|tok| Int::from_str(tok).is_ok())
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn peek(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos].trim();
            if line.is_empty() || line.starts_with('#') {
                self.pos += 1;
                continue;
            }
            return Some((self.pos + 1, line));
        }
        None
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek()?;
        self.pos += 1;
        Some(item)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), Error> {
        self.next()
            .ok_or_else(|| Error::Parse(format!("unexpected end of file, expected {what}")))
    }
}

fn keyword_arg<'a>(line: &'a str, keyword: &str, line_no: usize) -> Result<&'a str, Error> {
    let mut words = line.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(Error::Parse(format!(
            "line {line_no}: expected '{keyword} <value>', found '{line}'"
        )));
    }
    let value = words
        .next()
        .ok_or_else(|| Error::Parse(format!("line {line_no}: '{keyword}' needs a value")))?;
    if words.next().is_some() {
        return Err(Error::Parse(format!(
            "line {line_no}: trailing tokens after '{keyword} {value}'"
        )));
    }
    Ok(value)
}

fn parse_lattice_block(cur: &mut Cursor, name: &str) -> Result<Lattice, Error> {
    let (ln, line) = cur.expect("'rank <N>'")?;
    let rank: usize = keyword_arg(line, "rank", ln)?
        .parse()
        .map_err(|_| Error::Parse(format!("line {ln}: bad rank")))?;
    let (ln, line) = cur.expect("'gram'")?;
    if line != "gram" {
        return Err(Error::Parse(format!(
            "line {ln}: expected 'gram', found '{line}'"
        )));
    }
    let mut rows = Vec::with_capacity(rank);
    for _ in 0..rank {
        let (ln, line) = cur.expect("a gram matrix row")?;
        let row = parse_int_row(line, ln)?;
        if row.len() != rank {
            return Err(Error::Parse(format!(
                "line {ln}: expected {rank} entries, found {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    Lattice::new(name, IntMatrix::from_int_rows(rows))
}

fn parse_matrix_run(cur: &mut Cursor) -> Result<IntMatrix, Error> {
    let mut rows: Vec<Vec<Int>> = Vec::new();
    while let Some((ln, line)) = cur.peek() {
        if !looks_numeric(line) {
            break;
        }
        cur.next();
        let row = parse_int_row(line, ln)?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse(format!(
                    "line {ln}: expected {} entries, found {}",
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix block has no rows".into()));
    }
    Ok(IntMatrix::from_int_rows(rows))
}

fn parse_involution_block(
    cur: &mut Cursor,
    name: &str,
    lattice: &str,
) -> Result<InvolutionBlock, Error> {
    let (ln, line) = cur.expect("'matrix'")?;
    if line != "matrix" {
        return Err(Error::Parse(format!(
            "line {ln}: expected 'matrix', found '{line}'"
        )));
    }
    Ok(InvolutionBlock {
        name: name.to_string(),
        lattice: lattice.to_string(),
        matrix: parse_matrix_run(cur)?,
    })
}

fn parse_triple_block(cur: &mut Cursor, name: &str) -> Result<TripleBlock, Error> {
    let (ln, line) = cur.expect("'lattice <name>'")?;
    let lattice = keyword_arg(line, "lattice", ln)?.to_string();
    let (ln, line) = cur.expect("'tau <name>'")?;
    let tau = keyword_arg(line, "tau", ln)?.to_string();
    let (ln, line) = cur.expect("'sigma <name>'")?;
    let sigma = keyword_arg(line, "sigma", ln)?.to_string();
    Ok(TripleBlock {
        name: name.to_string(),
        lattice,
        tau,
        sigma,
    })
}

/// Parses a fixture file, accepting either the block format or its JSON
/// mirror (detected by a leading `{`).
pub fn parse_document(text: &str) -> Result<Document, Error> {
    if text.trim_start().starts_with('{') {
        return parse_json_document(text);
    }
    let mut doc = Document::default();
    let mut cur = Cursor::new(text);
    while let Some((ln, line)) = cur.next() {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("lattice") => {
                let name = words
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {ln}: 'lattice' needs a name")))?;
                doc.lattices.push(parse_lattice_block(&mut cur, name)?);
            }
            Some("involution") => {
                let name = words.next().ok_or_else(|| {
                    Error::Parse(format!("line {ln}: 'involution' needs a name"))
                })?;
                if words.next() != Some("on") {
                    return Err(Error::Parse(format!(
                        "line {ln}: expected 'involution {name} on <lattice>'"
                    )));
                }
                let lattice = words.next().ok_or_else(|| {
                    Error::Parse(format!("line {ln}: missing lattice name after 'on'"))
                })?;
                doc.involutions
                    .push(parse_involution_block(&mut cur, name, lattice)?);
            }
            Some("triple") => {
                let name = words
                    .next()
                    .ok_or_else(|| Error::Parse(format!("line {ln}: 'triple' needs a name")))?;
                doc.triples.push(parse_triple_block(&mut cur, name)?);
            }
            Some(other) => {
                return Err(Error::Parse(format!(
                    "line {ln}: unknown block keyword '{other}'"
                )));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    Ok(doc)
}

fn matrix_rows_i64(m: &IntMatrix, what: &str) -> Result<Vec<Vec<i64>>, Error> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(m[(i, j)].to_i64().ok_or_else(|| {
                Error::Parse(format!("{what}: entry exceeds the JSON integer range"))
            })?);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Serialize, Deserialize)]
struct JsonLattice {
    lattice: String,
    rank: usize,
    gram: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct JsonInvolution {
    involution: String,
    on: String,
    matrix: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct JsonTriple {
    triple: String,
    lattice: String,
    tau: String,
    sigma: String,
}

#[derive(Serialize, Deserialize, Default)]
struct JsonDocument {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lattices: Vec<JsonLattice>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    involutions: Vec<JsonInvolution>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    triples: Vec<JsonTriple>,
}

fn parse_json_document(text: &str) -> Result<Document, Error> {
    let raw: JsonDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
    let mut doc = Document::default();
    for l in raw.lattices {
        if l.gram.len() != l.rank {
            return Err(Error::Parse(format!(
                "lattice '{}': rank {} does not match {} gram rows",
                l.lattice,
                l.rank,
                l.gram.len()
            )));
        }
        for row in &l.gram {
            if row.len() != l.rank {
                return Err(Error::Parse(format!(
                    "lattice '{}': gram row with {} entries, expected {}",
                    l.lattice,
                    row.len(),
                    l.rank
                )));
            }
        }
        doc.lattices.push(Lattice::new(
            l.lattice,
            IntMatrix::from_rows(&l.gram),
        )?);
    }
    for b in raw.involutions {
        let rows = b.matrix;
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::Parse(format!(
                "involution '{}': matrix rows must be nonempty and of equal length",
                b.involution
            )));
        }
        doc.involutions.push(InvolutionBlock {
            name: b.involution,
            lattice: b.on,
            matrix: IntMatrix::from_rows(&rows),
        });
    }
    for t in raw.triples {
        doc.triples.push(TripleBlock {
            name: t.triple,
            lattice: t.lattice,
            tau: t.tau,
            sigma: t.sigma,
        });
    }
    Ok(doc)
}

fn render_matrix(m: &IntMatrix, out: &mut String) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Canonical text rendering: lattices, then involutions, then triples, one
/// blank line between blocks, trailing newline.
pub fn render_document(doc: &Document) -> String {
    let mut blocks: Vec<String> = Vec::new();
    for l in &doc.lattices {
        let mut s = format!("lattice {}\nrank {}\ngram\n", l.name(), l.rank());
        render_matrix(l.gram(), &mut s);
        s.pop();
        blocks.push(s);
    }
    for b in &doc.involutions {
        let mut s = format!("involution {} on {}\nmatrix\n", b.name, b.lattice);
        render_matrix(&b.matrix, &mut s);
        s.pop();
        blocks.push(s);
    }
    for t in &doc.triples {
        blocks.push(format!(
            "triple {}\nlattice {}\ntau {}\nsigma {}",
            t.name, t.lattice, t.tau, t.sigma
        ));
    }
    let mut out = blocks.join("\n\n");
    out.push('\n');
    out
}

/// The JSON mirror of [`render_document`].
pub fn render_document_json(doc: &Document) -> Result<String, Error> {
    let mut raw = JsonDocument::default();
    for l in &doc.lattices {
        raw.lattices.push(JsonLattice {
            lattice: l.name().to_string(),
            rank: l.rank(),
            gram: matrix_rows_i64(l.gram(), &format!("lattice '{}'", l.name()))?,
        });
    }
    for b in &doc.involutions {
        raw.involutions.push(JsonInvolution {
            involution: b.name.clone(),
            on: b.lattice.clone(),
            matrix: matrix_rows_i64(&b.matrix, &format!("involution '{}'", b.name))?,
        });
    }
    for t in &doc.triples {
        raw.triples.push(JsonTriple {
            triple: t.name.clone(),
            lattice: t.lattice.clone(),
            tau: t.tau.clone(),
            sigma: t.sigma.clone(),
        });
    }
    let mut s = serde_json::to_string_pretty(&raw).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Self-contained fixture document for a catalog entry: the K3 lattice,
/// the two involutions, and a triple block tying them together.
pub fn document_for_entry(entry: &CatalogEntry) -> Document {
    let tau = entry.tau();
    let sigma = entry.sigma();
    let lattice = tau.lattice().clone();
    let lattice_name = lattice.name().to_string();
    Document {
        lattices: vec![lattice],
        involutions: vec![
            InvolutionBlock {
                name: "tau".into(),
                lattice: lattice_name.clone(),
                matrix: tau.matrix().clone(),
            },
            InvolutionBlock {
                name: "sigma".into(),
                lattice: lattice_name.clone(),
                matrix: sigma.matrix().clone(),
            },
        ],
        triples: vec![TripleBlock {
            name: entry.name.to_string(),
            lattice: lattice_name,
            tau: "tau".into(),
            sigma: "sigma".into(),
        }],
    }
}
