//! Exact cylinder rectangles, a grid box-count oracle that never looks at
//! forced distances, rasterisation and file output.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::boxdim::{l_of_k, n_hat, ScaleRecord};
use crate::combinatorics::count_sigma;
use crate::error::{Error, Result};
use crate::format::sig10;
use crate::shift_model::presentation::{check_budget, End, Start, StateSet};
use crate::shift_model::{is_legal, Budget, GridConfig, Presentation, Symbol, Word};

pub type Point = (BigRational, BigRational);

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `S_(a,b)(x, y) = ((x + a - 1) / m, (y + b - 1) / n)`.
pub fn ifs_map(symbol: Symbol, point: &Point, cfg: &GridConfig) -> Point {
    let (x, y) = point;
    let dx = ratio(symbol.a as u64 - 1, 1);
    let dy = ratio(symbol.b as u64 - 1, 1);
    (
        (x + dx) / ratio(cfg.m as u64, 1),
        (y + dy) / ratio(cfg.n as u64, 1),
    )
}

/// `S_i([0,1]^2)` for a word of length `depth`: lower-left corner
/// `(x_num / m^depth, y_num / n^depth)`, width `m^-depth`, height `n^-depth`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rect {
    pub depth: u32,
    pub x_num: BigUint,
    pub y_num: BigUint,
    pub m: u32,
    pub n: u32,
}

impl Rect {
    pub fn unit(cfg: &GridConfig) -> Self {
        Rect {
            depth: 0,
            x_num: BigUint::zero(),
            y_num: BigUint::zero(),
            m: cfg.m,
            n: cfg.n,
        }
    }

    fn x_den(&self) -> BigUint {
        BigUint::from(self.m).pow(self.depth)
    }

    fn y_den(&self) -> BigUint {
        BigUint::from(self.n).pow(self.depth)
    }

    pub fn x0(&self) -> BigRational {
        BigRational::new(self.x_num.clone().into(), self.x_den().into())
    }

    pub fn y0(&self) -> BigRational {
        BigRational::new(self.y_num.clone().into(), self.y_den().into())
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(BigInt::one(), self.x_den().into())
    }

    pub fn height(&self) -> BigRational {
        BigRational::new(BigInt::one(), self.y_den().into())
    }

    pub fn x1(&self) -> BigRational {
        self.x0() + self.width()
    }

    pub fn y1(&self) -> BigRational {
        self.y0() + self.height()
    }

    /// Closed containment of `other` in `self`.
    pub fn contains(&self, other: &Rect) -> bool {
        self.x0() <= other.x0() && other.x1() <= self.x1() && self.y0() <= other.y0() && other.y1() <= self.y1()
    }

    /// Whether the open interiors meet.
    pub fn interiors_overlap(&self, other: &Rect) -> bool {
        self.x0() < other.x1() && other.x0() < self.x1() && self.y0() < other.y1() && other.y0() < self.y1()
    }

    fn push(&mut self, s: Symbol) {
        self.x_num = &self.x_num * self.m + (s.a as u32 - 1);
        self.y_num = &self.y_num * self.n + (s.b as u32 - 1);
        self.depth += 1;
    }
}

/// Exact rectangle `S_word([0,1]^2)`.
pub fn cylinder_rect(word: &Word, cfg: &GridConfig) -> Result<Rect> {
    if !is_legal(word, cfg) {
        return Err(Error::Domain(format!("cylinder of illegal word {word}")));
    }
    let mut rect = Rect::unit(cfg);
    for &s in word.symbols() {
        rect.push(s);
    }
    Ok(rect)
}

fn digits_value(digits: impl Iterator<Item = u64>, base: u64) -> u128 {
    digits.fold(0u128, |acc, d| acc * base as u128 + d as u128)
}

/// Number of cells of the `n^-k` grid met by the depth-`l(k)` cylinder
/// rectangles of legal words.
///
/// Cells are half-open `[i n^-k, (i+1) n^-k)` and so are the rectangles,
/// so a rectangle edge lying on a grid line does not mark the next cell.
/// The rows are fixed by the first `k` symbols; within a row the columns
/// come from every first-coordinate string of a legal length-`l`
/// extension, read off the unrolled presentation.
pub fn grid_box_count(k: usize, cfg: &GridConfig, budget: &Budget) -> Result<BigUint> {
    let l = l_of_k(k as u64, cfg) as usize;
    // one visit per (prefix, column string) pair
    check_budget(&n_hat(k, cfg, budget)?, budget)?;

    let (m, n) = (cfg.m as u64, cfg.n as u64);
    let cells_per_side = (n as u128)
        .checked_pow(k as u32)
        .filter(|c| *c <= u64::MAX as u128)
        .ok_or_else(|| Error::Domain(format!("grid {n}^{k} too fine for the oracle")))?;
    let m_pow_l = (m as u128)
        .checked_pow(l as u32)
        .filter(|v| v.checked_mul(cells_per_side).is_some())
        .ok_or_else(|| Error::Domain(format!("depth {l} too deep for the oracle")))?;

    let pres = Presentation::new(cfg, l);
    // row index -> prefixes (first-coordinate value, vertex set)
    let mut rows: BTreeMap<u128, Vec<(u128, StateSet)>> = BTreeMap::new();
    pres.for_each_word(k, Start::Anywhere, End::Anywhere, |w, set| {
        let row = digits_value(w.iter().map(|s| s.b as u64 - 1), n);
        let xa = digits_value(w.iter().map(|s| s.a as u64 - 1), m);
        rows.entry(row).or_default().push((xa, set.clone()));
    });

    let ext = l - k;
    let m_pow_ext = (m as u128).pow(ext as u32);
    let total: u64 = rows
        .par_iter()
        .map(|(_, prefixes)| {
            let mut marked = vec![0u64; (cells_per_side as usize).div_ceil(64)];
            for (xa, set) in prefixes {
                pres.for_each_projection(set, ext, |tail| {
                    let x = xa * m_pow_ext + digits_value(tail.iter().map(|&a| a as u64 - 1), m);
                    let lo = x * cells_per_side / m_pow_l;
                    let hi = ((x + 1) * cells_per_side).div_ceil(m_pow_l) - 1;
                    for col in lo..=hi.min(cells_per_side - 1) {
                        marked[(col / 64) as usize] |= 1 << (col % 64);
                    }
                });
            }
            marked.iter().map(|w| w.count_ones() as u64).sum::<u64>()
        })
        .sum();
    Ok(BigUint::from(total))
}

/// A row-major bitmap; row 0 is the top of the unit square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    /// Rows packed most significant bit first, each padded to a byte.
    bits: Vec<u8>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Self {
        Raster {
            width,
            height,
            bits: vec![0; width.div_ceil(8) * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    fn stride(&self) -> usize {
        self.width.div_ceil(8)
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.stride() + x / 8] & (0x80 >> (x % 8)) != 0
    }

    pub fn set(&mut self, x: usize, y: usize) {
        let stride = self.stride();
        self.bits[y * stride + x / 8] |= 0x80 >> (x % 8);
    }

    pub fn count_set(&self) -> usize {
        (0..self.height)
            .map(|y| (0..self.width).filter(|&x| self.get(x, y)).count())
            .sum()
    }

    /// Binary PBM (`P4`) bytes.
    pub fn to_pbm(&self) -> Vec<u8> {
        let mut out = format!("P4\n{} {}\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.bits);
        out
    }
}

/// Sets every pixel whose square meets the half-open rectangle of some
/// legal word of length `depth`.
pub fn rasterize(depth: usize, width: usize, height: usize, cfg: &GridConfig, budget: &Budget) -> Result<Raster> {
    check_budget(&count_sigma(depth, cfg), budget)?;
    let too_deep = || Error::Domain(format!("depth {depth} too deep for a {width}x{height} raster"));
    let xden = (cfg.m as u128).checked_pow(depth as u32).ok_or_else(too_deep)?;
    let yden = (cfg.n as u128).checked_pow(depth as u32).ok_or_else(too_deep)?;
    xden.checked_mul(width as u128 + 1).ok_or_else(too_deep)?;
    yden.checked_mul(height as u128 + 1).ok_or_else(too_deep)?;

    let mut raster = Raster::new(width, height);
    if width == 0 || height == 0 {
        return Ok(raster);
    }
    let (w, h) = (width as u128, height as u128);
    let pres = Presentation::new(cfg, depth);
    pres.for_each_word(depth, Start::Anywhere, End::Anywhere, |word, _| {
        let x = digits_value(word.iter().map(|s| s.a as u64 - 1), cfg.m as u64);
        let y = digits_value(word.iter().map(|s| s.b as u64 - 1), cfg.n as u64);
        let (x_lo, x_hi) = (x * w / xden, ((x + 1) * w).div_ceil(xden) - 1);
        let (y_lo, y_hi) = (y * h / yden, ((y + 1) * h).div_ceil(yden) - 1);
        for yy in y_lo..=y_hi {
            for xx in x_lo..=x_hi {
                raster.set(xx as usize, (h - 1 - yy) as usize);
            }
        }
    });
    Ok(raster)
}

pub fn write_pnm(raster: &Raster, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, raster.to_pbm()).map_err(|e| Error::io(path, e))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(BufWriter::new(file)))
}

/// Writes a header row and the given rows as LF-terminated CSV.
pub fn write_csv(path: impl AsRef<Path>, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let path = path.as_ref();
    let wrap = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(&row).map_err(wrap)?;
    }
    let mut inner = w.into_inner().map_err(|e| Error::io(path, e.into_error()))?;
    inner.flush().map_err(|e| Error::io(path, e))
}

pub const SCALE_CSV_HEADER: [&str; 4] = ["k", "l", "n_hat", "ratio"];

pub fn scale_row(r: &ScaleRecord) -> Vec<String> {
    vec![r.k.to_string(), r.l.to_string(), r.n_hat.to_string(), sig10(r.ratio)]
}

/// `k,l,n_hat,ratio` with `n_hat` as an exact decimal.
pub fn export_csv(records: &[ScaleRecord], path: impl AsRef<Path>) -> Result<()> {
    write_csv(path, &SCALE_CSV_HEADER, records.iter().map(scale_row))
}

/// Reads a file written by [`export_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ScaleRecord>> {
    let path = path.as_ref();
    let wrap = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(wrap)?;
    let bad = |what: &str| Error::Domain(format!("{}: bad {what} field", path.display()));
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(wrap)?;
        out.push(ScaleRecord {
            k: rec[0].parse().map_err(|_| bad("k"))?,
            l: rec[1].parse().map_err(|_| bad("l"))?,
            n_hat: rec[2].parse().map_err(|_| bad("n_hat"))?,
            ratio: rec[3].parse().map_err(|_| bad("ratio"))?,
        });
    }
    Ok(out)
}

/// Pixel area helper for reports: fraction of set pixels.
pub fn coverage(raster: &Raster) -> f64 {
    let total = raster.width() * raster.height();
    if total == 0 {
        return 0.0;
    }
    raster.count_set().to_f64().unwrap_or(0.0) / total as f64
}
