//! Binary linear codes from explicit generator or incidence matrices.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::combinatorics::Integer;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

const ENUMERATION_CAP: usize = 28;

type Row = Vec<u64>;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn get(row: &Row, i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn set(row: &mut Row, i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn xor_into(dst: &mut Row, src: &Row) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn weight(row: &Row) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockList {
    pub v: usize,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl BlockList {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut k = None;
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadBlockList(format!("block {b:?} repeats a point")));
            }
            if let Some(&p) = b.iter().find(|&&p| p >= v) {
                return Err(Error::BadBlockList(format!("point {p} out of range 0..{v}")));
            }
            match k {
                None => k = Some(b.len()),
                Some(k0) if k0 != b.len() => {
                    return Err(Error::BadBlockList("blocks have different sizes".into()))
                }
                _ => {}
            }
            if !seen.insert(b.clone()) {
                return Err(Error::BadBlockList(format!("repeated block {b:?}")));
            }
            out.push(b);
        }
        Ok(BlockList {
            v,
            k: k.unwrap_or(0),
            blocks: out,
        })
    }

    /// Parse "v b k" followed by b lines of k point indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty block list".into()))?;
        let nums: Vec<usize> = parse_usizes(head)?;
        let [v, b, k] = nums[..] else {
            return Err(Error::Parse(format!("header must be \"v b k\", got {head:?}")));
        };
        let mut blocks = Vec::with_capacity(b);
        for line in lines {
            let blk = parse_usizes(line)?;
            if blk.len() != k {
                return Err(Error::Parse(format!("block of size {} where k = {k}", blk.len())));
            }
            blocks.push(blk);
        }
        if blocks.len() != b {
            return Err(Error::Parse(format!("expected {b} blocks, found {}", blocks.len())));
        }
        BlockList::new(v, blocks)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{} {} {}\n", self.v, self.blocks.len(), self.k);
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(|p| p.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn complement(&self) -> BlockList {
        let blocks = self
            .blocks
            .iter()
            .map(|b| (0..self.v).filter(|p| b.binary_search(p).is_err()).collect())
            .collect();
        BlockList::new(self.v, blocks).expect("complements of distinct blocks are distinct")
    }
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
        .collect()
}

/// A binary linear code held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    n: usize,
    basis: Vec<Row>,
    pivots: Vec<usize>,
}

impl BinaryCode {
    pub fn from_rows(n: usize, rows: Vec<Row>) -> Self {
        let mut rows = rows;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| get(&rows[i], col)) else {
                continue;
            };
            rows.swap(r, p);
            let pr = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && get(row, col) {
                    xor_into(row, &pr);
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        BinaryCode {
            n,
            basis: rows,
            pivots,
        }
    }

    pub fn from_vectors(n: usize, vecs: &[Vec<bool>]) -> Self {
        let rows = vecs
            .iter()
            .map(|v| {
                let mut row = vec![0u64; words(n)];
                for (i, &b) in v.iter().enumerate() {
                    if b {
                        set(&mut row, i);
                    }
                }
                row
            })
            .collect();
        Self::from_rows(n, rows)
    }

    /// Parse ℓ lines of n characters from {0,1}.
    pub fn parse_generator(text: &str) -> Result<Self> {
        let mut n = None;
        let mut vecs = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let v: Vec<bool> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse(format!("unexpected character {c:?} in generator row"))),
                })
                .collect::<Result<_>>()?;
            match n {
                None => n = Some(v.len()),
                Some(n0) if n0 != v.len() => return Err(Error::Parse("generator rows differ in length".into())),
                _ => {}
            }
            vecs.push(v);
        }
        let n = n.ok_or_else(|| Error::Parse("empty generator matrix".into()))?;
        Ok(Self::from_vectors(n, &vecs))
    }

    pub fn zero(n: usize) -> Self {
        BinaryCode {
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u64; words(n)];
                set(&mut r, i);
                r
            })
            .collect();
        Self::from_rows(n, rows)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<bool>> {
        self.basis.iter().map(|r| (0..self.n).map(|i| get(r, i)).collect()).collect()
    }

    fn reduce(&self, v: &Row) -> Row {
        let mut v = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if get(&v, p) {
                xor_into(&mut v, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[bool]) -> bool {
        let mut row = vec![0u64; words(self.n)];
        for (i, &b) in v.iter().enumerate() {
            if b {
                set(&mut row, i);
            }
        }
        weight(&self.reduce(&row)) == 0
    }

    pub fn contains_all_one(&self) -> bool {
        self.contains(&vec![true; self.n])
    }

    pub fn dual(&self) -> BinaryCode {
        let free: Vec<usize> = (0..self.n).filter(|c| !self.pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut r = vec![0u64; words(self.n)];
                set(&mut r, f);
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    if get(row, f) {
                        set(&mut r, p);
                    }
                }
                r
            })
            .collect();
        BinaryCode::from_rows(self.n, rows)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.basis.iter().all(|a| {
            self.basis
                .iter()
                .all(|b| a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 0)
        })
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.basis.iter().all(|r| weight(&other.reduce(r)) == 0)
    }

    /// Exact weight distribution by Gray-code enumeration of all 2^ℓ words.
    pub fn weight_distribution(&self) -> Result<WeightEnumerator> {
        let l = self.dimension();
        if l > ENUMERATION_CAP {
            return Err(Error::DimensionTooLarge(l));
        }
        // split on the top few generators so chunks run in parallel
        let split = l.min(6);
        let low = l - split;
        let counts: Vec<Vec<u64>> = (0u64..1 << split)
            .into_par_iter()
            .map(|prefix| {
                let mut cur = vec![0u64; words(self.n)];
                for j in 0..split {
                    if prefix >> j & 1 == 1 {
                        xor_into(&mut cur, &self.basis[low + j]);
                    }
                }
                let mut counts = vec![0u64; self.n + 1];
                counts[weight(&cur)] += 1;
                for i in 1u64..1 << low {
                    let flip = i.trailing_zeros() as usize;
                    xor_into(&mut cur, &self.basis[flip]);
                    counts[weight(&cur)] += 1;
                }
                counts
            })
            .collect();
        let mut total = vec![0u64; self.n + 1];
        for c in counts {
            for (t, x) in total.iter_mut().zip(c) {
                *t += x;
            }
        }
        Ok(WeightEnumerator::new(total.into_iter().map(Integer::from).collect()))
    }

    /// Supports of all codewords of the given weight (small dimensions only).
    pub fn supports_of_weight(&self, w: usize) -> Result<Vec<Vec<usize>>> {
        let l = self.dimension();
        if l > ENUMERATION_CAP {
            return Err(Error::DimensionTooLarge(l));
        }
        let mut out = Vec::new();
        let mut cur = vec![0u64; words(self.n)];
        let support = |r: &Row| (0..self.n).filter(|&i| get(r, i)).collect::<Vec<_>>();
        if w == 0 {
            out.push(Vec::new());
        }
        for i in 1u64..1 << l {
            let flip = i.trailing_zeros() as usize;
            xor_into(&mut cur, &self.basis[flip]);
            if weight(&cur) == w {
                out.push(support(&cur));
            }
        }
        out.sort();
        Ok(out)
    }
}

pub fn code_from_blocks(bl: &BlockList) -> BinaryCode {
    let rows = bl
        .blocks
        .iter()
        .map(|b| {
            let mut r = vec![0u64; words(bl.v)];
            for &p in b {
                set(&mut r, p);
            }
            r
        })
        .collect();
    BinaryCode::from_rows(bl.v, rows)
}

pub fn dual(c: &BinaryCode) -> BinaryCode {
    c.dual()
}

pub fn weight_distribution(c: &BinaryCode) -> Result<WeightEnumerator> {
    c.weight_distribution()
}

pub fn contains_all_one(c: &BinaryCode) -> bool {
    c.contains_all_one()
}

/// The extended Golay generator matrix shipped with the crate.
pub const GOLAY24: &str = include_str!("../data/golay24.txt");

pub fn golay() -> BinaryCode {
    BinaryCode::parse_generator(GOLAY24).expect("bundled fixture parses")
}
