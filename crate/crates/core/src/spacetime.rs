//! Position-space fields synthesized from momentum-space sections, and
//! finite-difference residuals on uniform grids.
//!
//! A(t, x) = sum_nodes w sqrt(p0) psi(p) exp(-i p0 t + i p.x) / (2 pi)^{3/2}.
//! Residuals are streamed over time slices so only three slices are resident.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CVec;
use crate::mass_shell::ShellGrid;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeGrid {
    /// Points per axis.
    pub n: usize,
    /// Spacing.
    pub h: f64,
}

impl Default for SpacetimeGrid {
    fn default() -> Self {
        SpacetimeGrid { n: 32, h: 0.25 }
    }
}

impl SpacetimeGrid {
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - (self.n as f64 - 1.0) / 2.0) * self.h
    }

    pub fn check(&self) -> Result<()> {
        if self.n < 3 || !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidGrid(format!("spacetime grid needs n >= 3 and h > 0, got {self:?}")));
        }
        Ok(())
    }
}

/// Anything that can produce a time slice laid out as [x][y][z][component].
pub trait SliceSource: Sync {
    fn grid(&self) -> SpacetimeGrid;
    fn comps(&self) -> usize;
    fn slice(&self, t: usize) -> Vec<C64>;
}

/// Plane-wave superposition, evaluated on demand.
pub struct Synthesizer {
    grid: SpacetimeGrid,
    comps: usize,
    nodes: Vec<([f64; 4], CVec)>,
}

impl Synthesizer {
    /// Coefficients w sqrt(p0) psi / (2 pi)^{3/2}, one per momentum node.
    pub fn new(momenta: &ShellGrid, values: &[CVec], grid: SpacetimeGrid) -> Result<Self> {
        grid.check()?;
        if values.len() != momenta.len() {
            return Err(Error::GridMismatch(format!("{} values for {} nodes", values.len(), momenta.len())));
        }
        let comps = values.first().map(|v| v.len()).unwrap_or(0);
        if values.iter().any(|v| v.len() != comps) {
            return Err(Error::GridMismatch("ragged section values".into()));
        }
        let norm = (2.0 * std::f64::consts::PI).powf(-1.5);
        let nodes = momenta
            .nodes
            .iter()
            .zip(&momenta.weights)
            .zip(values)
            .map(|((p, w), v)| {
                let s = p.spatial();
                ([p.energy(), s[0], s[1], s[2]], v * C64::new(w * p.energy().sqrt() * norm, 0.0))
            })
            .collect();
        Ok(Synthesizer { grid, comps, nodes })
    }

    pub fn materialize(&self) -> SpacetimeField {
        let data: Vec<C64> = (0..self.grid.n).into_par_iter().flat_map_iter(|t| self.slice(t)).collect();
        SpacetimeField { grid: self.grid, comps: self.comps, data }
    }

    /// Value at one point, summed directly.
    pub fn eval(&self, x: [f64; 4]) -> CVec {
        let mut out = CVec::zeros(self.comps);
        for (p, c) in &self.nodes {
            let ph = -p[0] * x[0] + p[1] * x[1] + p[2] * x[2] + p[3] * x[3];
            out += c * C64::from_polar(1.0, ph);
        }
        out
    }
}

impl SliceSource for Synthesizer {
    fn grid(&self) -> SpacetimeGrid {
        self.grid
    }

    fn comps(&self) -> usize {
        self.comps
    }

    fn slice(&self, t: usize) -> Vec<C64> {
        let n = self.grid.n;
        let k = self.comps;
        let tc = self.grid.coord(t);
        let tables: Vec<(Vec<C64>, [Vec<C64>; 3])> = self
            .nodes
            .iter()
            .map(|(p, c)| {
                let head: Vec<C64> = c.iter().map(|v| v * C64::from_polar(1.0, -p[0] * tc)).collect();
                let axis = |a: usize| (0..n).map(|i| C64::from_polar(1.0, p[a + 1] * self.grid.coord(i))).collect::<Vec<_>>();
                (head, [axis(0), axis(1), axis(2)])
            })
            .collect();
        let mut out = vec![C64::new(0.0, 0.0); n * n * n * k];
        out.par_chunks_mut(n * n * k).enumerate().for_each(|(ix, plane)| {
            let mut row = vec![C64::new(0.0, 0.0); k];
            for (head, [px, py, pz]) in &tables {
                for iy in 0..n {
                    let f = px[ix] * py[iy];
                    for (r, h) in row.iter_mut().zip(head) {
                        *r = h * f;
                    }
                    let line = &mut plane[iy * n * k..(iy + 1) * n * k];
                    for (iz, z) in pz.iter().enumerate() {
                        for c in 0..k {
                            line[iz * k + c] += row[c] * z;
                        }
                    }
                }
            }
        });
        out
    }
}

/// Fully materialized field, layout [t][x][y][z][component].
#[derive(Clone, Debug, PartialEq)]
pub struct SpacetimeField {
    pub grid: SpacetimeGrid,
    pub comps: usize,
    pub data: Vec<C64>,
}

impl SpacetimeField {
    pub fn at(&self, idx: [usize; 4], c: usize) -> C64 {
        let n = self.grid.n;
        self.data[(((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3]) * self.comps + c]
    }

    pub fn sub(&self, o: &SpacetimeField) -> Result<SpacetimeField> {
        if self.grid != o.grid || self.comps != o.comps {
            return Err(Error::GridMismatch("fields on different grids".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Ok(SpacetimeField { grid: self.grid, comps: self.comps, data })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, z| m.max(z.norm()))
    }
}

impl SliceSource for SpacetimeField {
    fn grid(&self) -> SpacetimeGrid {
        self.grid
    }

    fn comps(&self) -> usize {
        self.comps
    }

    fn slice(&self, t: usize) -> Vec<C64> {
        let len = self.grid.n.pow(3) * self.comps;
        self.data[t * len..(t + 1) * len].to_vec()
    }
}

/// Two sources on the same grid read as one, components of `a` first.
pub struct Concat<'a> {
    a: &'a dyn SliceSource,
    b: &'a dyn SliceSource,
}

impl<'a> Concat<'a> {
    pub fn new(a: &'a dyn SliceSource, b: &'a dyn SliceSource) -> Result<Self> {
        if a.grid() != b.grid() {
            return Err(Error::GridMismatch("sources on different grids".into()));
        }
        Ok(Concat { a, b })
    }
}

impl SliceSource for Concat<'_> {
    fn grid(&self) -> SpacetimeGrid {
        self.a.grid()
    }

    fn comps(&self) -> usize {
        self.a.comps() + self.b.comps()
    }

    fn slice(&self, t: usize) -> Vec<C64> {
        let (ka, kb) = (self.a.comps(), self.b.comps());
        let a = self.a.slice(t);
        let b = self.b.slice(t);
        let pts = self.grid().n.pow(3);
        let mut out = Vec::with_capacity(pts * (ka + kb));
        for i in 0..pts {
            out.extend_from_slice(&a[i * ka..(i + 1) * ka]);
            out.extend_from_slice(&b[i * kb..(i + 1) * kb]);
        }
        out
    }
}

/// Central-difference stencil at one interior point.
pub struct Stencil<'a> {
    slices: [&'a [C64]; 3],
    n: usize,
    k: usize,
    h: f64,
    x: [usize; 3],
}

impl Stencil<'_> {
    fn idx(&self, x: [usize; 3], c: usize) -> usize {
        ((x[0] * self.n + x[1]) * self.n + x[2]) * self.k + c
    }

    fn shifted(&self, axis: usize, delta: isize, c: usize) -> C64 {
        if axis == 0 {
            let s = (1 + delta) as usize;
            return self.slices[s][self.idx(self.x, c)];
        }
        let mut x = self.x;
        x[axis - 1] = (x[axis - 1] as isize + delta) as usize;
        self.slices[1][self.idx(x, c)]
    }

    pub fn value(&self, c: usize) -> C64 {
        self.slices[1][self.idx(self.x, c)]
    }

    /// d/dx^mu, mu = 0 is time.
    pub fn d(&self, mu: usize, c: usize) -> C64 {
        (self.shifted(mu, 1, c) - self.shifted(mu, -1, c)) / (2.0 * self.h)
    }

    pub fn dd(&self, mu: usize, c: usize) -> C64 {
        (self.shifted(mu, 1, c) - self.value(c) * 2.0 + self.shifted(mu, -1, c)) / (self.h * self.h)
    }

    /// d'Alembertian d_t^2 - laplacian.
    pub fn box_op(&self, c: usize) -> C64 {
        self.dd(0, c) - self.dd(1, c) - self.dd(2, c) - self.dd(3, c)
    }
}

/// Scans every interior point, returning the componentwise maximum of `f`
/// together with max |field| over the whole grid.
pub fn scan_interior<S, F, const K: usize>(src: &S, f: F) -> ([f64; K], f64)
where
    S: SliceSource + ?Sized,
    F: Fn(&Stencil) -> [f64; K] + Sync,
{
    let g = src.grid();
    let n = g.n;
    let k = src.comps();
    let mut worst = [0.0_f64; K];
    let mut peak = 0.0_f64;
    let mut window: Vec<Vec<C64>> = vec![src.slice(0), src.slice(1)];
    for s in &window {
        peak = s.iter().fold(peak, |m, z| m.max(z.norm()));
    }
    for t in 1..n - 1 {
        let next = src.slice(t + 1);
        peak = next.iter().fold(peak, |m, z| m.max(z.norm()));
        window.push(next);
        let slices = [&window[0][..], &window[1][..], &window[2][..]];
        let local = (1..n - 1)
            .into_par_iter()
            .map(|ix| {
                let mut w = [0.0_f64; K];
                for iy in 1..n - 1 {
                    for iz in 1..n - 1 {
                        let st = Stencil { slices, n, k, h: g.h, x: [ix, iy, iz] };
                        let v = f(&st);
                        for j in 0..K {
                            w[j] = w[j].max(v[j]);
                        }
                    }
                }
                w
            })
            .reduce(|| [0.0; K], |a, b| std::array::from_fn(|j| a[j].max(b[j])));
        for j in 0..K {
            worst[j] = worst[j].max(local[j]);
        }
        window.remove(0);
    }
    (worst, peak)
}

/// Observed order log2(r_h / r_{h/2}) for consecutive entries.
pub fn convergence_orders(residuals: &[f64]) -> Vec<f64> {
    residuals.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}
