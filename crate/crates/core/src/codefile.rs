//! JSON persistence for [`CodeSpec`].
//!
//! Field elements are written as canonical integers and polynomials as
//! coefficient lists, lowest degree first. Objects are laid out one key per
//! line with arrays kept on a single line so files diff cleanly.

use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::construction::{validate_params, CodeSpec};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Polynomial};
use crate::goodpoly::{normalize_gamma, PartitionSpec, SubgroupKind, SubgroupSpec};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupFile {
    pub kind: SubgroupKind,
    pub elements: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpecFile {
    pub version: u32,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub m: usize,
    pub n_bar: usize,
    pub subgroup: SubgroupFile,
    pub blocks: Vec<Vec<u32>>,
    #[serde(rename = "B")]
    pub removed: Vec<u32>,
    pub gamma: u32,
    pub g_tilde: Vec<u32>,
    #[serde(rename = "h_B")]
    pub h_b: Vec<u32>,
    pub eval_points: Vec<u32>,
    pub generator_matrix: Vec<Vec<u32>>,
}

fn values(xs: &[FieldElement]) -> Vec<u32> {
    xs.iter().map(|x| x.value()).collect()
}

impl From<&CodeSpec> for CodeSpecFile {
    fn from(spec: &CodeSpec) -> Self {
        let p = spec.params();
        CodeSpecFile {
            version: FORMAT_VERSION,
            q: p.q as u32,
            n: p.n,
            k: p.k,
            r: p.r,
            s: p.s,
            t: p.t,
            m: p.m,
            n_bar: p.n_bar,
            subgroup: SubgroupFile {
                kind: spec.subgroup().kind,
                elements: values(&spec.subgroup().elements),
            },
            blocks: spec.partition().blocks.iter().map(|b| values(b)).collect(),
            removed: values(&spec.partition().removed),
            gamma: spec.good().gamma.value(),
            g_tilde: values(spec.good().g_tilde.coeffs()),
            h_b: values(spec.h_b().coeffs()),
            eval_points: values(spec.eval_points()),
            generator_matrix: spec.generator().iter().map(|row| values(row)).collect(),
        }
    }
}

impl CodeSpecFile {
    /// Re-validates every stored quantity and rebuilds the spec.
    pub fn into_spec(self) -> Result<CodeSpec> {
        if self.version != FORMAT_VERSION {
            return Err(Error::InvalidSpec(format!("unsupported version {}", self.version)));
        }
        let params = validate_params(self.q as u64, self.n, self.k, self.r)?;
        let derived = (params.s, params.t, params.m, params.n_bar);
        if derived != (self.s, self.t, self.m, self.n_bar) {
            return Err(Error::InvalidSpec(format!(
                "derived (s, t, m, n_bar) = {derived:?} do not match stored values"
            )));
        }
        let field = params.field;
        let elems = |xs: &[u32]| -> Result<Vec<FieldElement>> { xs.iter().map(|&x| field.element(x as u64)).collect() };
        let subgroup = SubgroupSpec {
            kind: self.subgroup.kind,
            elements: elems(&self.subgroup.elements)?,
        };
        let blocks = self.blocks.iter().map(|b| elems(b)).collect::<Result<_>>()?;
        let partition = PartitionSpec {
            blocks,
            removed: elems(&self.removed)?,
        };
        partition.validate()?;
        let gamma = field.element(self.gamma as u64)?;
        let g_tilde = Polynomial::from_coeffs(elems(&self.g_tilde)?);
        if g_tilde.coeffs().len() != self.g_tilde.len() {
            return Err(Error::InvalidSpec("g_tilde has trailing zero coefficients".into()));
        }
        let g_raw = g_tilde.add(&Polynomial::constant(gamma), &field);
        let good = normalize_gamma(&field, &g_raw, &partition)?;
        let h_b = Polynomial::from_coeffs(elems(&self.h_b)?);
        let eval_points = elems(&self.eval_points)?;
        let generator = self
            .generator_matrix
            .iter()
            .map(|row| elems(row))
            .collect::<Result<_>>()?;
        CodeSpec::from_components(params, subgroup, partition, good, h_b, eval_points, generator)
    }

    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, LineFormatter::default());
        self.serialize(&mut ser).expect("serializing to memory cannot fail");
        buf.push(b'\n');
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }
}

pub fn spec_to_json(spec: &CodeSpec) -> String {
    CodeSpecFile::from(spec).to_json()
}

pub fn spec_from_json(json: &str) -> Result<CodeSpec> {
    let file: CodeSpecFile = serde_json::from_str(json)?;
    file.into_spec()
}

pub fn load(path: &Path) -> Result<CodeSpec> {
    spec_from_json(&std::fs::read_to_string(path)?)
}

pub fn save(spec: &CodeSpec, path: &Path) -> Result<()> {
    std::fs::write(path, spec_to_json(spec))?;
    Ok(())
}

/// One object key per line, arrays inline.
#[derive(Default)]
struct LineFormatter {
    depth: usize,
}

impl LineFormatter {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl Formatter for LineFormatter {
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth += 1;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.depth -= 1;
        self.newline(w)?;
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }
}

/// Parses whitespace-separated canonical integers into field elements.
pub fn parse_symbols(field: &Field, text: &str) -> Result<Vec<FieldElement>> {
    text.split_whitespace()
        .map(|tok| {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::MalformedInput(format!("symbol {tok:?} is not an integer")))?;
            field.element(v)
        })
        .collect()
}

/// Like [`parse_symbols`] but `?` marks an erasure.
pub fn parse_received(field: &Field, text: &str) -> Result<Vec<Option<FieldElement>>> {
    text.split_whitespace()
        .map(|tok| {
            if tok == "?" {
                return Ok(None);
            }
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::MalformedInput(format!("symbol {tok:?} is not an integer")))?;
            field.element(v).map(Some)
        })
        .collect()
}

pub fn format_symbols(xs: &[FieldElement]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
