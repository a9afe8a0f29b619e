//! Weighted complete-graph instances.
//!
//! An [`Instance`] is a symmetric nonnegative weight matrix over `p >= 3`
//! vertices, optionally backed by planar coordinates. Vertices are labeled
//! `1..=p` everywhere in the public API; the matrix is stored flat and
//! 0-indexed internally.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance accepted when checking matrix symmetry.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Kind of randomly generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InstanceKind {
    /// Integer weights drawn uniformly from `[1, range]`.
    Uniform,
    /// Points drawn uniformly from `[0, range]^2`, weights = rounded distances.
    Euclidean,
}

impl std::fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceKind::Uniform => write!(f, "uniform"),
            InstanceKind::Euclidean => write!(f, "euclidean"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    name: String,
    p: usize,
    w: Vec<f64>,
    coords: Option<Vec<(f64, f64)>>,
}

/// Euclidean distances are rounded to six decimals so that instances
/// round-trip through text files exactly.
fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

impl Instance {
    /// Builds an instance from a full weight matrix.
    ///
    /// The matrix must be square with `p >= 3`, symmetric within
    /// [`SYMMETRY_TOL`], have a zero diagonal and no negative entries.
    /// The lower triangle is mirrored from the upper one so the stored
    /// matrix is exactly symmetric.
    pub fn from_rows(
        name: impl Into<String>,
        rows: &[Vec<f64>],
        coords: Option<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        let p = rows.len();
        if p < 3 {
            return Err(Error::BadParameter(format!("need p >= 3 vertices, got {p}")));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(Error::BadParameter(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    p
                )));
            }
        }
        if let Some(c) = &coords {
            if c.len() != p {
                return Err(Error::BadParameter(format!(
                    "{} coordinates for {} vertices",
                    c.len(),
                    p
                )));
            }
        }
        let mut w = vec![0.0; p * p];
        for i in 0..p {
            if !rows[i][i].is_finite() || rows[i][i].abs() > SYMMETRY_TOL {
                return Err(Error::BadParameter(format!(
                    "nonzero diagonal entry at vertex {}",
                    i + 1
                )));
            }
            for j in (i + 1)..p {
                let (a, b) = (rows[i][j], rows[j][i]);
                if !a.is_finite() || !b.is_finite() || a < 0.0 {
                    return Err(Error::BadParameter(format!(
                        "weight at ({},{}) must be finite and nonnegative",
                        i + 1,
                        j + 1
                    )));
                }
                if (a - b).abs() > SYMMETRY_TOL {
                    return Err(Error::SymmetryViolation { i: i + 1, j: j + 1, a, b });
                }
                w[i * p + j] = a;
                w[j * p + i] = a;
            }
        }
        Ok(Instance { name: name.into(), p, w, coords })
    }

    /// Builds a Euclidean instance from planar points; weights are pairwise
    /// distances rounded to six decimals.
    pub fn from_coords(name: impl Into<String>, pts: &[(f64, f64)]) -> Result<Self> {
        let p = pts.len();
        if p < 3 {
            return Err(Error::BadParameter(format!("need p >= 3 vertices, got {p}")));
        }
        if pts.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::BadParameter("coordinates must be finite".into()));
        }
        let mut w = vec![0.0; p * p];
        for i in 0..p {
            for j in (i + 1)..p {
                let d =
                    round6(((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt());
                w[i * p + j] = d;
                w[j * p + i] = d;
            }
        }
        Ok(Instance { name: name.into(), p, w, coords: Some(pts.to_vec()) })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    /// Weight of edge `(i, j)`, vertices labeled `1..=p`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i >= 1 && i <= self.p && j >= 1 && j <= self.p);
        self.w[(i - 1) * self.p + (j - 1)]
    }

    /// All `p(p-1)/2` edges `(i, j, w)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (1..=self.p).flat_map(move |i| ((i + 1)..=self.p).map(move |j| (i, j, self.weight(i, j))))
    }

    /// Relabels vertices `a` and `b` by swapping the corresponding rows and
    /// columns (and coordinates, when present). `a == b` is the identity.
    pub fn apply_transposition(&self, a: usize, b: usize) -> Result<Instance> {
        for v in [a, b] {
            if v < 1 || v > self.p {
                return Err(Error::IndexOutOfRange { index: v, p: self.p });
            }
        }
        let mut out = self.clone();
        if a == b {
            return Ok(out);
        }
        let (a0, b0) = (a - 1, b - 1);
        for k in 0..self.p {
            out.w.swap(a0 * self.p + k, b0 * self.p + k);
        }
        for k in 0..self.p {
            out.w.swap(k * self.p + a0, k * self.p + b0);
        }
        if let Some(c) = &mut out.coords {
            c.swap(a0, b0);
        }
        Ok(out)
    }

    /// Sum of the strict upper triangle excluding the superdiagonal:
    /// `sum over i of sum over j >= i+2 of w(i, j)`.
    ///
    /// Together with the diagonal-path weight `sum of w(i, i+1)` this
    /// partitions the full upper-triangle sum, so maximizing one is the same
    /// as minimizing the other over relabelings.
    pub fn triangular_sum(&self) -> f64 {
        let mut s = 0.0;
        for i in 1..=self.p.saturating_sub(2) {
            for j in (i + 2)..=self.p {
                s += self.weight(i, j);
            }
        }
        s
    }

    /// Weight of the diagonal path `1 -> 2 -> ... -> p`.
    pub fn diagonal_path_weight(&self) -> f64 {
        (1..self.p).map(|i| self.weight(i, i + 1)).sum()
    }

    /// Parses an instance from text. Two formats are recognized:
    ///
    /// * matrix: first line `p`, then `p` rows of `p` weights;
    /// * Euclidean: literal `EUC2D`, then `p`, then `p` lines of `x y`.
    ///
    /// Lines starting with `#` and blank lines are skipped.
    pub fn parse_str(text: &str, name: impl Into<String>) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.is_empty() {
            return Err(Error::Parse { line: 0, msg: "empty file".into() });
        }
        let name = name.into();
        if lines[0].1.eq_ignore_ascii_case("EUC2D") {
            let (pline, ptext) = lines.get(1).ok_or(Error::Parse {
                line: lines[0].0,
                msg: "missing vertex count after EUC2D".into(),
            })?;
            let p: usize = parse_num(ptext, *pline)?;
            let mut pts = Vec::with_capacity(p);
            for k in 0..p {
                let (ln, l) = lines.get(2 + k).ok_or(Error::Parse {
                    line: *pline,
                    msg: format!("expected {p} coordinate lines"),
                })?;
                let nums = parse_row(l, *ln)?;
                if nums.len() != 2 {
                    return Err(Error::Parse { line: *ln, msg: "expected `x y`".into() });
                }
                pts.push((nums[0], nums[1]));
            }
            Instance::from_coords(name, &pts)
        } else {
            let p: usize = parse_num(lines[0].1, lines[0].0)?;
            let mut rows = Vec::with_capacity(p);
            for k in 0..p {
                let (ln, l) = lines.get(1 + k).ok_or(Error::Parse {
                    line: lines[0].0,
                    msg: format!("expected {p} matrix rows"),
                })?;
                let nums = parse_row(l, *ln)?;
                if nums.len() != p {
                    return Err(Error::Parse {
                        line: *ln,
                        msg: format!("expected {} weights, got {}", p, nums.len()),
                    });
                }
                rows.push(nums);
            }
            Instance::from_rows(name, &rows, None)
        }
    }

    /// Serializes the instance in the format it would be parsed from:
    /// `EUC2D` when coordinates are present, plain matrix otherwise.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        if let Some(pts) = &self.coords {
            s.push_str("EUC2D\n");
            let _ = writeln!(s, "{}", self.p);
            for (x, y) in pts {
                let _ = writeln!(s, "{x} {y}");
            }
        } else {
            let _ = writeln!(s, "{}", self.p);
            for i in 1..=self.p {
                let row: Vec<String> =
                    (1..=self.p).map(|j| format!("{}", self.weight(i, j))).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
        s
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "instance".into());
        Instance::parse_str(&text, name)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_string())?;
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("cannot parse `{s}`") })
}

fn parse_row(s: &str, line: usize) -> Result<Vec<f64>> {
    s.split_whitespace().map(|t| parse_num(t, line)).collect()
}

/// Generates a deterministic random instance from a seed.
///
/// `Uniform` draws integer weights from `[1, range]`; `Euclidean` draws `p`
/// points from `[0, range]^2` and takes rounded pairwise distances, so the
/// triangle inequality holds up to the rounding tolerance.
// draw order over (i, j) is part of the seeded contract
#[allow(clippy::needless_range_loop)]
pub fn gen_random_instance(
    seed: u64,
    p: usize,
    kind: InstanceKind,
    range: f64,
) -> Result<Instance> {
    if p < 3 {
        return Err(Error::BadParameter(format!("need p >= 3 vertices, got {p}")));
    }
    if range < 1.0 {
        return Err(Error::BadParameter("range must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("{kind}-p{p}-s{seed}");
    match kind {
        InstanceKind::Uniform => {
            let hi = range.floor() as u64;
            let mut rows = vec![vec![0.0; p]; p];
            for i in 0..p {
                for j in (i + 1)..p {
                    let w = rng.random_range(1..=hi) as f64;
                    rows[i][j] = w;
                    rows[j][i] = w;
                }
            }
            Instance::from_rows(name, &rows, None)
        }
        InstanceKind::Euclidean => {
            let pts: Vec<(f64, f64)> = (0..p)
                .map(|_| {
                    (round6(rng.random_range(0.0..range)), round6(rng.random_range(0.0..range)))
                })
                .collect();
            Instance::from_coords(name, &pts)
        }
    }
}
