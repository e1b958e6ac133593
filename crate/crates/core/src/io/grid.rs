use std::fmt::Write;

use super::json::fmt_f64;
use crate::error::{Error, Result};
use crate::transform::ScalarGrid;

/// Grid geometry shared by sample files and label files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridHeader {
    pub dim: usize,
    pub res: [usize; 3],
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
}

impl GridHeader {
    pub fn of(grid: &ScalarGrid) -> Self {
        Self {
            dim: grid.dim(),
            res: grid.res(),
            origin: grid.origin(),
            spacing: grid.spacing(),
        }
    }

    pub fn len(&self) -> usize {
        self.res.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn write(&self, out: &mut String, magic: &str) {
        let d = self.dim;
        let join = |xs: &[String]| xs.join(" ");
        let _ = writeln!(out, "{magic} 1");
        let _ = writeln!(out, "dim {d}");
        let _ = writeln!(out, "res {}", join(&self.res[..d].iter().map(|r| r.to_string()).collect::<Vec<_>>()));
        let _ = writeln!(out, "origin {}", join(&self.origin[..d].iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>()));
        let _ = writeln!(out, "spacing {}", join(&self.spacing[..d].iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>()));
    }
}

/// Writes `items` with one grid row (`nx` entries) per line.
fn write_rows<T>(out: &mut String, nx: usize, items: &[T], fmt: impl Fn(&T) -> String) {
    for row in items.chunks(nx) {
        let line: Vec<String> = row.iter().map(&fmt).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn write_grid(grid: &ScalarGrid) -> String {
    let header = GridHeader::of(grid);
    let mut out = String::new();
    header.write(&mut out, "SGRID");
    write_rows(&mut out, header.res[0], grid.values(), |&x| fmt_f64(x));
    if let Some(flags) = grid.flags() {
        out.push_str("flags\n");
        write_rows(&mut out, header.res[0], flags, |&b| if b { "1".into() } else { "0".into() });
    }
    out
}

/// Writes per-node segment labels in the `SEGM 1` variant of the grid
/// format.
pub fn write_labels(header: &GridHeader, labels: &[usize]) -> Result<String> {
    if labels.len() != header.len() {
        return Err(Error::GridMismatch(format!("{} labels for {} nodes", labels.len(), header.len())));
    }
    let mut out = String::new();
    header.write(&mut out, "SEGM");
    write_rows(&mut out, header.res[0], labels, |l| l.to_string());
    Ok(out)
}

struct Parsed<'a> {
    header: GridHeader,
    body: Vec<&'a str>,
}

fn parse_header<'a>(text: &'a str, magic: &str) -> Result<Parsed<'a>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut next = |what: &str| -> Result<Vec<&'a str>> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing '{what}' line")))?;
        let mut words = line.split_whitespace();
        if words.next() != Some(what) {
            return Err(Error::Parse(format!("expected '{what}', found '{line}'")));
        }
        Ok(words.collect())
    };
    let version = next(magic)?;
    if version != ["1"] {
        return Err(Error::Parse(format!("unsupported {magic} version {version:?}")));
    }
    let dim_words = next("dim")?;
    let dim: usize = match dim_words[..] {
        [d] => d.parse().map_err(|_| Error::Parse(format!("bad dim '{d}'")))?,
        _ => return Err(Error::Parse("dim takes one value".into())),
    };
    if dim != 2 && dim != 3 {
        return Err(Error::Parse(format!("unsupported dim {dim}")));
    }
    let numbers = |what: &str, words: Vec<&str>| -> Result<Vec<f64>> {
        if words.len() != dim {
            return Err(Error::Parse(format!("'{what}' needs {dim} values, found {}", words.len())));
        }
        words
            .iter()
            .map(|w| w.parse::<f64>().map_err(|_| Error::Parse(format!("bad {what} value '{w}'"))))
            .collect()
    };
    let res_words = next("res")?;
    if res_words.len() != dim {
        return Err(Error::Parse(format!("'res' needs {dim} values")));
    }
    let mut res = [1usize; 3];
    for (r, w) in res.iter_mut().zip(&res_words) {
        *r = w.parse().map_err(|_| Error::Parse(format!("bad res value '{w}'")))?;
    }
    let mut origin = [0.0; 3];
    origin[..dim].copy_from_slice(&numbers("origin", next("origin")?)?);
    let mut spacing = [1.0; 3];
    spacing[..dim].copy_from_slice(&numbers("spacing", next("spacing")?)?);
    let body = lines.flat_map(str::split_whitespace).collect();
    Ok(Parsed {
        header: GridHeader { dim, res, origin, spacing },
        body,
    })
}

pub fn read_grid(text: &str) -> Result<ScalarGrid> {
    let Parsed { header, body } = parse_header(text, "SGRID")?;
    let n = header.len();
    let split = body.iter().position(|&w| w == "flags").unwrap_or(body.len());
    let values = body[..split]
        .iter()
        .map(|w| w.parse::<f64>().map_err(|_| Error::Parse(format!("bad sample '{w}'"))))
        .collect::<Result<Vec<f64>>>()?;
    if values.len() != n {
        return Err(Error::Parse(format!("{} samples for {n} grid nodes", values.len())));
    }
    let grid = ScalarGrid::new(header.dim, header.res, header.origin, header.spacing, values)?;
    if split == body.len() {
        return Ok(grid);
    }
    let flags = body[split + 1..]
        .iter()
        .map(|&w| match w {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(Error::Parse(format!("bad flag '{w}'"))),
        })
        .collect::<Result<Vec<bool>>>()?;
    if flags.len() != n {
        return Err(Error::Parse(format!("{} flags for {n} grid nodes", flags.len())));
    }
    grid.with_flags(flags)
}

pub fn read_labels(text: &str) -> Result<(GridHeader, Vec<usize>)> {
    let Parsed { header, body } = parse_header(text, "SEGM")?;
    let labels = body
        .iter()
        .map(|w| w.parse::<usize>().map_err(|_| Error::Parse(format!("bad label '{w}'"))))
        .collect::<Result<Vec<usize>>>()?;
    if labels.len() != header.len() {
        return Err(Error::Parse(format!("{} labels for {} grid nodes", labels.len(), header.len())));
    }
    Ok((header, labels))
}
