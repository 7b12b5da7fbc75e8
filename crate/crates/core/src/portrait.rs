//! Floating-point phase portraits near the origin.
//!
//! Trajectories come from fixed-step RK4 so scenes are deterministic; zero
//! sets come from marching squares on a regular grid.

use alloc::vec::Vec;

// inherent f64 math is only reachable through std in test builds
#[allow(unused_imports)]
use num_traits::Float;

use crate::forms::PlaneField;
use crate::jet::Jet;

/// A polynomial with `f64` coefficients, `Σ c x^i y^j`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    terms: Vec<(u32, u32, f64)>,
}

impl Poly {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Poly {
        let mut p = Poly::default();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Every stored coefficient of the jet, converted to `f64`.
    pub fn from_jet(j: &Jet) -> Poly {
        Poly::new(j.to_f64_terms())
    }

    pub fn terms(&self) -> &[(u32, u32, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        if c == 0.0 {
            return;
        }
        match self.terms.binary_search_by_key(&(i, j), |&(a, b, _)| (a, b)) {
            Ok(k) => {
                self.terms[k].2 += c;
                if self.terms[k].2 == 0.0 {
                    self.terms.remove(k);
                }
            }
            Err(k) => self.terms.insert(k, (i, j, c)),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for &(i, j, c) in &self.terms {
            for &(k, l, d) in &other.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(i, j, c)| c * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolyField {
    pub u: Poly,
    pub v: Poly,
}

impl PolyField {
    pub fn new(u: Poly, v: Poly) -> PolyField {
        PolyField { u, v }
    }

    pub fn from_field(x: &PlaneField) -> PolyField {
        PolyField::new(Poly::from_jet(&x.u), Poly::from_jet(&x.v))
    }

    pub fn scale(&self, f: &Poly) -> PolyField {
        PolyField::new(f.mul(&self.u), f.mul(&self.v))
    }

    pub fn eval(&self, p: Point) -> Point {
        [self.u.eval(p[0], p[1]), self.v.eval(p[0], p[1])]
    }
}

pub type Point = [f64; 2];

/// Axis-aligned box `[-hx, hx] × [-hy, hy]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub hx: f64,
    pub hy: f64,
}

impl Window {
    /// `None` unless both half-widths are finite and positive.
    pub fn new(hx: f64, hy: f64) -> Option<Window> {
        let ok = |h: f64| h.is_finite() && h > 0.0;
        (ok(hx) && ok(hy)).then_some(Window { hx, hy })
    }

    pub fn square(h: f64) -> Option<Window> {
        Window::new(h, h)
    }

    pub fn contains(&self, p: Point) -> bool {
        p[0].abs() <= self.hx && p[1].abs() <= self.hy
    }

    /// The point where the segment from `inside` towards `outside` leaves.
    fn clip(&self, inside: Point, outside: Point) -> Point {
        let mut t = 1.0f64;
        for k in 0..2 {
            let h = if k == 0 { self.hx } else { self.hy };
            let d = outside[k] - inside[k];
            if outside[k] > h {
                t = t.min((h - inside[k]) / d);
            } else if outside[k] < -h {
                t = t.min((-h - inside[k]) / d);
            }
        }
        let t = t.clamp(0.0, 1.0);
        [inside[0] + t * (outside[0] - inside[0]), inside[1] + t * (outside[1] - inside[1])]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PortraitSpec {
    pub window: Window,
    /// Seeds per axis, placed at cell centres.
    pub seeds: (usize, usize),
    pub step: f64,
    pub max_steps: usize,
    /// Marching-squares cells per axis.
    pub resolution: usize,
}

pub const DEFAULT_MAX_STEPS: usize = 4000;
const STALL_SPEED: f64 = 1e-9;

impl PortraitSpec {
    pub fn new(window: Window) -> PortraitSpec {
        PortraitSpec {
            window,
            seeds: (9, 9),
            step: 1e-3,
            max_steps: DEFAULT_MAX_STEPS,
            resolution: 64,
        }
    }

    pub fn seed_points(&self) -> Vec<Point> {
        let (nx, ny) = self.seeds;
        let w = self.window;
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let x = -w.hx + (i as f64 + 0.5) * 2.0 * w.hx / nx as f64;
                let y = -w.hy + (j as f64 + 0.5) * 2.0 * w.hy / ny as f64;
                out.push([x, y]);
            }
        }
        out
    }

    /// Diagonal of one contour cell.
    pub fn cell_diagonal(&self) -> f64 {
        let n = self.resolution.max(1) as f64;
        let (dx, dy) = (2.0 * self.window.hx / n, 2.0 * self.window.hy / n);
        (dx * dx + dy * dy).sqrt()
    }
}

/// A sampled trajectory: `(t, x, y)` with `t` increasing.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<[f64; 3]>,
}

impl Trajectory {
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.samples.iter().map(|s| [s[1], s[2]])
    }

    pub fn is_stationary(&self) -> bool {
        self.samples.len() <= 1
    }
}

pub type Polyline = Vec<Point>;

#[derive(Clone, Debug, PartialEq)]
pub struct PortraitScene {
    pub window: Window,
    pub trajectories: Vec<Trajectory>,
    /// Zero set of the multiplier `f_c`.
    pub equilibria: Vec<Polyline>,
    /// Zero set of `X_a` itself; isolated zeros are one-point polylines.
    pub singular: Vec<Polyline>,
}

impl PortraitScene {
    pub fn empty(window: Window) -> PortraitScene {
        PortraitScene {
            window,
            trajectories: Vec::new(),
            equilibria: Vec::new(),
            singular: Vec::new(),
        }
    }

    /// Connected components of the whole equilibrium set, with `tol` as the
    /// contact distance between pieces.
    pub fn equilibrium_components(&self, tol: f64) -> usize {
        let all: Vec<&Polyline> = self.equilibria.iter().chain(&self.singular).collect();
        connected_components(&all, tol)
    }
}

fn rk4(x: &PolyField, p: Point, h: f64) -> Point {
    let add = |p: Point, k: Point, s: f64| [p[0] + s * k[0], p[1] + s * k[1]];
    let k1 = x.eval(p);
    let k2 = x.eval(add(p, k1, h / 2.0));
    let k3 = x.eval(add(p, k2, h / 2.0));
    let k4 = x.eval(add(p, k3, h));
    [
        p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

fn speed2(x: &PolyField, p: Point) -> f64 {
    let v = x.eval(p);
    v[0] * v[0] + v[1] * v[1]
}

fn dist(a: Point, b: Point) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// One direction of integration from `seed`: `direction` is `1.0` or `-1.0`.
///
/// Stops on leaving the window (the last point is clipped to the boundary),
/// after `max_steps`, when the speed drops below `1e-9`, or when the orbit
/// closes up on its seed. Samples carry signed times.
pub fn integrate_from(x: &PolyField, seed: Point, direction: f64, spec: &PortraitSpec) -> Vec<[f64; 3]> {
    let h = direction * spec.step;
    let mut out = alloc::vec![[0.0, seed[0], seed[1]]];
    let mut p = seed;
    let mut wandered = 0.0f64;
    for n in 1..=spec.max_steps {
        if speed2(x, p) < STALL_SPEED * STALL_SPEED {
            break;
        }
        let q = rk4(x, p, h);
        let t = n as f64 * h;
        if !q[0].is_finite() || !q[1].is_finite() {
            break;
        }
        if !spec.window.contains(q) {
            let c = spec.window.clip(p, q);
            out.push([t, c[0], c[1]]);
            break;
        }
        let back = dist(q, seed);
        let stride = dist(p, q);
        wandered = wandered.max(back);
        out.push([t, q[0], q[1]]);
        if wandered > 20.0 * stride && back <= stride {
            out.push([t, seed[0], seed[1]]);
            break;
        }
        p = q;
    }
    out
}

/// Forward and backward trajectory through `seed`, ordered by time.
pub fn trajectory_through(x: &PolyField, seed: Point, spec: &PortraitSpec) -> Trajectory {
    let forward = integrate_from(x, seed, 1.0, spec);
    let closed = forward.len() > 2 && {
        let last = forward[forward.len() - 1];
        last[1] == seed[0] && last[2] == seed[1]
    };
    let mut samples = Vec::new();
    if !closed {
        let backward = integrate_from(x, seed, -1.0, spec);
        samples.extend(backward.into_iter().skip(1).rev());
    }
    samples.extend(forward);
    if samples.len() == 2 && samples[0][1..] == samples[1][1..] {
        samples.truncate(1);
    }
    Trajectory { samples }
}

pub fn integrate(x: &PolyField, spec: &PortraitSpec) -> Vec<Trajectory> {
    spec.seed_points()
        .into_iter()
        .map(|s| trajectory_through(x, s, spec))
        .collect()
}

struct Grid {
    window: Window,
    n: usize,
    values: Vec<f64>,
}

impl Grid {
    fn sample(f: &Poly, window: Window, n: usize) -> Grid {
        let mut values = Vec::with_capacity((n + 1) * (n + 1));
        for j in 0..=n {
            for i in 0..=n {
                let p = Grid::vertex_at(window, n, i, j);
                values.push(f.eval(p[0], p[1]));
            }
        }
        Grid { window, n, values }
    }

    fn vertex_at(window: Window, n: usize, i: usize, j: usize) -> Point {
        [
            -window.hx + 2.0 * window.hx * i as f64 / n as f64,
            -window.hy + 2.0 * window.hy * j as f64 / n as f64,
        ]
    }

    fn vertex(&self, i: usize, j: usize) -> Point {
        Grid::vertex_at(self.window, self.n, i, j)
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    fn edge_point(&self, a: (usize, usize), b: (usize, usize)) -> Point {
        let (va, vb) = (self.value(a.0, a.1), self.value(b.0, b.1));
        let t = if va == vb { 0.5 } else { va / (va - vb) };
        let (pa, pb) = (self.vertex(a.0, a.1), self.vertex(b.0, b.1));
        [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]
    }

    fn cell_brackets_zero(&self, i: usize, j: usize) -> bool {
        let c = self.corners(i, j);
        let (lo, hi) = c.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(a, b)| {
            let v = self.value(a, b);
            (lo.min(v), hi.max(v))
        });
        lo <= 0.0 && hi >= 0.0
    }

    fn corners(&self, i: usize, j: usize) -> [(usize, usize); 4] {
        [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
    }
}

/// Zero contour of `f` by marching squares with `resolution` cells per axis
/// (at least 16), joined into polylines.
pub fn equilibrium_contour(f: &Poly, window: Window, resolution: usize) -> Vec<Polyline> {
    let n = resolution.max(16);
    if f.is_zero() {
        return Vec::new();
    }
    let grid = Grid::sample(f, window, n);
    let mut segments: Vec<[Point; 2]> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let c = grid.corners(i, j);
            let mut case = 0;
            for (bit, &(a, b)) in c.iter().enumerate() {
                if grid.value(a, b) >= 0.0 {
                    case |= 1 << bit;
                }
            }
            // edges: 0 bottom, 1 right, 2 top, 3 left
            let edge = |e: usize| grid.edge_point(c[e], c[(e + 1) % 4]);
            let pairs: &[(usize, usize)] = match case {
                0 | 15 => &[],
                1 | 14 => &[(3, 0)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(3, 1)],
                4 | 11 => &[(1, 2)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(3, 2)],
                5 | 10 => {
                    let centre = c.iter().map(|&(a, b)| grid.value(a, b)).sum::<f64>() / 4.0;
                    let joined = (centre >= 0.0) == (case == 5);
                    if joined {
                        &[(3, 2), (0, 1)]
                    } else {
                        &[(3, 0), (1, 2)]
                    }
                }
                _ => unreachable!(),
            };
            for &(e1, e2) in pairs {
                let seg = [edge(e1), edge(e2)];
                if !same(seg[0], seg[1]) {
                    segments.push(seg);
                }
            }
        }
    }
    join_segments(segments)
}

fn same(a: Point, b: Point) -> bool {
    dist(a, b) <= 1e-12
}

fn join_segments(segments: Vec<[Point; 2]>) -> Vec<Polyline> {
    let mut used = alloc::vec![false; segments.len()];
    let mut out = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut line: alloc::collections::VecDeque<Point> = segments[start].iter().copied().collect();
        loop {
            let mut grew = false;
            for (k, s) in segments.iter().enumerate() {
                if used[k] {
                    continue;
                }
                let (head, tail) = (line[0], line[line.len() - 1]);
                if same(s[0], tail) {
                    line.push_back(s[1]);
                } else if same(s[1], tail) {
                    line.push_back(s[0]);
                } else if same(s[1], head) {
                    line.push_front(s[0]);
                } else if same(s[0], head) {
                    line.push_front(s[1]);
                } else {
                    continue;
                }
                used[k] = true;
                grew = true;
            }
            if !grew {
                break;
            }
        }
        out.push(line.into_iter().collect());
    }
    out
}

/// Zero set of a planar field: a contour when one component vanishes
/// identically, otherwise the clustered cells where both components change
/// sign, each reported as a one-point polyline.
pub fn singular_set(x: &PolyField, window: Window, resolution: usize) -> Vec<Polyline> {
    let n = resolution.max(16);
    match (x.u.is_zero(), x.v.is_zero()) {
        (true, true) => return Vec::new(),
        (true, false) => return equilibrium_contour(&x.v, window, n),
        (false, true) => return equilibrium_contour(&x.u, window, n),
        _ => {}
    }
    let (gu, gv) = (Grid::sample(&x.u, window, n), Grid::sample(&x.v, window, n));
    let mut cells = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if gu.cell_brackets_zero(i, j) && gv.cell_brackets_zero(i, j) {
                cells.push((i, j));
            }
        }
    }
    let mut cluster = alloc::vec![usize::MAX; cells.len()];
    let mut out = Vec::new();
    for s in 0..cells.len() {
        if cluster[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        cluster[s] = id;
        let mut stack = alloc::vec![s];
        let mut members = Vec::new();
        while let Some(k) = stack.pop() {
            members.push(cells[k]);
            for (m, &(i, j)) in cells.iter().enumerate() {
                let (ci, cj) = cells[k];
                if cluster[m] == usize::MAX && i.abs_diff(ci) <= 1 && j.abs_diff(cj) <= 1 {
                    cluster[m] = id;
                    stack.push(m);
                }
            }
        }
        let mut centre = [0.0, 0.0];
        for &(i, j) in &members {
            let p = gu.vertex(i, j);
            let q = gu.vertex(i + 1, j + 1);
            centre[0] += (p[0] + q[0]) / 2.0;
            centre[1] += (p[1] + q[1]) / 2.0;
        }
        let k = members.len() as f64;
        let centre = [centre[0] / k, centre[1] / k];
        out.push(alloc::vec![refine_zero(x, centre, 2.0 * window.hx / n as f64)]);
    }
    out
}

/// A few Newton steps towards a zero of `x`, kept only if they stay within
/// one cell of the starting point.
fn refine_zero(x: &PolyField, start: Point, cell: f64) -> Point {
    let h = cell * 1e-3;
    let mut p = start;
    for _ in 0..8 {
        let f = x.eval(p);
        let fx = x.eval([p[0] + h, p[1]]);
        let fy = x.eval([p[0], p[1] + h]);
        let j = [[(fx[0] - f[0]) / h, (fy[0] - f[0]) / h], [(fx[1] - f[1]) / h, (fy[1] - f[1]) / h]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return start;
        }
        let dx = (j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let dy = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
        p = [p[0] - dx, p[1] - dy];
    }
    if dist(p, start) <= cell && p[0].is_finite() && p[1].is_finite() {
        p
    } else {
        start
    }
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0);
    dist(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

fn segments_touch(a: Point, b: Point, c: Point, d: Point, tol: f64) -> bool {
    let cross = |o: Point, p: Point, q: Point| (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
    let (d1, d2) = (cross(a, b, c), cross(a, b, d));
    let (d3, d4) = (cross(c, d, a), cross(c, d, b));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    point_segment_distance(c, a, b) <= tol
        || point_segment_distance(d, a, b) <= tol
        || point_segment_distance(a, c, d) <= tol
        || point_segment_distance(b, c, d) <= tol
}

fn segments(line: &Polyline) -> Vec<(Point, Point)> {
    match line.len() {
        0 => Vec::new(),
        1 => alloc::vec![(line[0], line[0])],
        _ => line.windows(2).map(|w| (w[0], w[1])).collect(),
    }
}

fn polylines_touch(a: &Polyline, b: &Polyline, tol: f64) -> bool {
    let (sa, sb) = (segments(a), segments(b));
    sa.iter()
        .any(|&(p, q)| sb.iter().any(|&(r, s)| segments_touch(p, q, r, s, tol)))
}

/// Number of connected pieces of a union of polylines.
pub fn connected_components(lines: &[&Polyline], tol: f64) -> usize {
    let n = lines.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if root(&mut parent, i) != root(&mut parent, j) && polylines_touch(lines[i], lines[j], tol) {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    (0..n).filter(|&i| root(&mut parent, i) == i).count()
}

/// Trajectories of `f · X_a` together with the zero sets of `f` and `X_a`.
pub fn scene(f: &Poly, xa: &PolyField, spec: &PortraitSpec) -> PortraitScene {
    let x = xa.scale(f);
    PortraitScene {
        window: spec.window,
        trajectories: integrate(&x, spec),
        equilibria: equilibrium_contour(f, spec.window, spec.resolution),
        singular: singular_set(xa, spec.window, spec.resolution),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn poly(s: &str) -> Poly {
        Poly::from_jet(&parse_expr(s, 12).unwrap())
    }

    fn spec(h: f64) -> PortraitSpec {
        PortraitSpec::new(Window::square(h).unwrap())
    }

    #[test]
    fn window_validation() {
        assert!(Window::square(0.0).is_none());
        assert!(Window::new(1.0, -1.0).is_none());
        assert!(Window::square(f64::NAN).is_none());
        let w = Window::square(1.0).unwrap();
        assert_eq!(w.clip([0.5, 0.0], [1.5, 0.0]), [1.0, 0.0]);
    }

    #[test]
    fn rotation_gives_circles() {
        let x = PolyField::new(poly("-y"), poly("x"));
        let s = spec(1.0);
        for seed in [[0.3, 0.0], [0.0, -0.7], [0.2, 0.2]] {
            let t = trajectory_through(&x, seed, &s);
            let r0 = seed[0] * seed[0] + seed[1] * seed[1];
            let drift = t
                .points()
                .map(|p| (p[0] * p[0] + p[1] * p[1] - r0).abs())
                .fold(0.0, f64::max);
            assert!(drift < 1e-6, "{drift}");
            let angle_span = t.samples.last().unwrap()[0] - t.samples[0][0];
            assert!(angle_span > core::f64::consts::TAU, "{angle_span}");
        }
    }

    #[test]
    fn equilibria_of_liouville_field_do_not_move() {
        let x = PolyField::new(poly("-(x + y)*x"), Poly::default());
        let t = trajectory_through(&x, [0.0, 0.3], &spec(0.5));
        assert!(t.is_stationary());
    }

    #[test]
    fn horizontal_flow_reverses_across_parabola() {
        let x = PolyField::new(poly("-(y - x^2)*(1 + x)"), Poly::default());
        let s = spec(0.5);
        let above = integrate_from(&x, [0.0, 0.2], 1.0, &s);
        let below = integrate_from(&x, [0.0, -0.2], 1.0, &s);
        assert!(above.iter().all(|p| p[2] == 0.2));
        assert!(below.iter().all(|p| p[2] == -0.2));
        assert!(above[1][1] < 0.0);
        assert!(below[1][1] > 0.0);
    }

    #[test]
    fn backward_retraces_forward() {
        let x = PolyField::new(poly("(1 + y)*(-y)"), poly("(1 + y)*(x - x^2)"));
        let s = spec(0.5);
        let fwd = integrate_from(&x, [0.1, 0.05], 1.0, &s);
        let end = fwd[fwd.len() - 2];
        let back = integrate_from(&x, [end[1], end[2]], -1.0, &s);
        for (a, b) in fwd[..fwd.len() - 1].iter().rev().zip(&back) {
            assert!(dist([a[1], a[2]], [b[1], b[2]]) < 1e-4);
        }
    }

    #[test]
    fn parabola_contour() {
        let w = Window::square(1.0).unwrap();
        let lines = equilibrium_contour(&poly("y - x^2"), w, 32);
        assert_eq!(lines.len(), 1);
        let cell = 2.0 / 32.0;
        for p in &lines[0] {
            assert!((p[1] - p[0] * p[0]).abs() < cell);
        }
    }

    #[test]
    fn shifted_line_contour() {
        let w = Window::square(0.5).unwrap();
        let lines = equilibrium_contour(&poly("0.3 + x + y"), w, 40);
        assert_eq!(lines.len(), 1);
        for p in &lines[0] {
            assert!((p[0] + p[1] + 0.3).abs() < 1e-9);
        }
    }

    #[test]
    fn cusp_contour_passes_through_origin() {
        let w = Window::square(0.5).unwrap();
        let f = poly("x^2 + y^3");
        let lines = equilibrium_contour(&f, w, 64);
        let near = lines
            .iter()
            .flatten()
            .map(|p| dist(*p, [0.0, 0.0]))
            .fold(f64::INFINITY, f64::min);
        assert!(near < 2.0 / 64.0);
        for p in lines.iter().flatten() {
            assert!(p[1] <= 1e-12);
        }
    }

    #[test]
    fn isolated_singular_point() {
        let w = Window::square(0.5).unwrap();
        let pts = singular_set(&PolyField::new(poly("-y"), poly("x")), w, 64);
        assert_eq!(pts.len(), 1);
        assert!(dist(pts[0][0], [0.0, 0.0]) < 1e-9);
        let none = singular_set(&PolyField::new(poly("-1 - x"), Poly::default()), w, 64);
        assert!(none.is_empty());
    }

    #[test]
    fn component_counts() {
        let w = Window::square(0.25).unwrap();
        let s = PortraitSpec::new(w);
        let xa = PolyField::new(poly("-x"), Poly::default());
        let tol = s.cell_diagonal();
        for (c, expected) in [("-0.3", 2), ("0", 1), ("0.3", 2)] {
            let f = poly(&alloc::format!("{c} + x + y"));
            let sc = PortraitScene {
                window: w,
                trajectories: Vec::new(),
                equilibria: equilibrium_contour(&f, w, 64),
                singular: singular_set(&xa, w, 64),
            };
            assert_eq!(sc.equilibrium_components(tol), expected, "c = {c}");
        }
    }

    #[test]
    fn scenes_are_deterministic() {
        let s = spec(0.5);
        let f = poly("x");
        let xa = PolyField::new(poly("-y"), poly("x"));
        assert_eq!(scene(&f, &xa, &s), scene(&f, &xa, &s));
    }
}
