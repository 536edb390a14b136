//! Finite-difference checks of operator expansions with non-constant
//! potentials, where plane waves are no longer eigenfunctions.
//!
//! Fields are sampled on five time slices; residuals are evaluated on the
//! middle one.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{kappa, kg_symbol, tau, PhysicalConstants};
use crate::algebra::{Basis, Octon, C64, XI};
use crate::error::{Error, Result};
use crate::exec::{par_map, Execution};
use crate::operators::left_multiplication_by;

pub const TIME_SLICES: usize = 5;
const MID: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub shape: [usize; 3],
    pub spacing: [f64; 3],
    pub origin: [f64; 3],
    pub dt: f64,
    /// Periodic in all three spatial directions; otherwise only points two
    /// cells away from the walls and inside the central half of the box are
    /// evaluated.
    pub periodic: bool,
}

impl GridSpec {
    /// Periodic cube [0, 2π)³ with `n` points per side and dt = h.
    pub fn periodic_cube(n: usize) -> GridSpec {
        let h = 2.0 * std::f64::consts::PI / n as f64;
        GridSpec { shape: [n; 3], spacing: [h; 3], origin: [0.0; 3], dt: h, periodic: true }
    }

    /// Closed cube [−half, half]³ with `n` points per side including the walls.
    pub fn closed_cube(n: usize, half: f64) -> GridSpec {
        let h = 2.0 * half / (n - 1) as f64;
        GridSpec { shape: [n; 3], spacing: [h; 3], origin: [-half; 3], dt: h, periodic: false }
    }

    pub fn points(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn position(&self, p: [usize; 3]) -> [f64; 3] {
        std::array::from_fn(|a| self.origin[a] + p[a] as f64 * self.spacing[a])
    }

    pub fn time(&self, slice: usize) -> f64 {
        (slice as f64 - MID as f64) * self.dt
    }

    fn unflatten(&self, idx: usize) -> [usize; 3] {
        let [_, ny, nz] = self.shape;
        [idx / (ny * nz), (idx / nz) % ny, idx % nz]
    }

    fn flatten(&self, p: [usize; 3]) -> usize {
        (p[0] * self.shape[1] + p[1]) * self.shape[2] + p[2]
    }

    fn step(&self, p: [usize; 3], axis: usize, d: isize) -> [usize; 3] {
        let mut q = p;
        let n = self.shape[axis] as isize;
        let v = p[axis] as isize + d;
        q[axis] = if self.periodic { v.rem_euclid(n) as usize } else { v as usize };
        q
    }

    fn has_margin(&self, p: [usize; 3], margin: usize) -> bool {
        self.periodic || (0..3).all(|a| p[a] >= margin && p[a] + margin < self.shape[a])
    }

    fn in_core(&self, p: [usize; 3]) -> bool {
        if self.periodic {
            return true;
        }
        self.has_margin(p, 2)
            && (0..3).all(|a| {
                let len = (self.shape[a] - 1) as f64 * self.spacing[a];
                let x = p[a] as f64 * self.spacing[a];
                (x - 0.5 * len).abs() <= 0.25 * len + 1e-12
            })
    }
}

/// Octon field ψ and potentials Φ, A sampled on five time slices.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFields {
    pub spec: GridSpec,
    pub psi: Vec<Octon>,
    pub phi: Vec<f64>,
    pub a: Vec<[f64; 3]>,
}

impl SampledFields {
    pub fn sample<P, F, A>(spec: GridSpec, psi: P, phi: F, a: A) -> SampledFields
    where
        P: Fn(f64, [f64; 3]) -> Octon,
        F: Fn(f64, [f64; 3]) -> f64,
        A: Fn(f64, [f64; 3]) -> [f64; 3],
    {
        let n = spec.points();
        let mut out = SampledFields {
            spec,
            psi: Vec::with_capacity(TIME_SLICES * n),
            phi: Vec::with_capacity(TIME_SLICES * n),
            a: Vec::with_capacity(TIME_SLICES * n),
        };
        for s in 0..TIME_SLICES {
            let t = spec.time(s);
            for idx in 0..n {
                let r = spec.position(spec.unflatten(idx));
                out.psi.push(psi(t, r));
                out.phi.push(phi(t, r));
                out.a.push(a(t, r));
            }
        }
        out
    }

    fn at(&self, s: usize, p: [usize; 3]) -> usize {
        s * self.spec.points() + self.spec.flatten(p)
    }
}

fn central<T>(get: impl Fn(usize, [usize; 3]) -> T, spec: &GridSpec, s: usize, p: [usize; 3], axis: usize) -> T
where
    T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    let fwd = get(s, spec.step(p, axis, 1));
    let back = get(s, spec.step(p, axis, -1));
    (fwd - back) * (0.5 / spec.spacing[axis])
}

fn time_central<T>(get: impl Fn(usize, [usize; 3]) -> T, spec: &GridSpec, s: usize, p: [usize; 3]) -> T
where
    T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
{
    (get(s + 1, p) - get(s - 1, p)) * (0.5 / spec.dt)
}

fn second<T>(get: impl Fn(usize, [usize; 3]) -> T, spec: &GridSpec, s: usize, p: [usize; 3], axis: usize) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + Copy,
{
    let f0 = get(s, p);
    (get(s, spec.step(p, axis, 1)) + get(s, spec.step(p, axis, -1)) - f0 * 2.0) * (1.0 / spec.spacing[axis].powi(2))
}

#[derive(Clone, Copy)]
struct V3([f64; 3]);

impl std::ops::Sub for V3 {
    type Output = V3;
    fn sub(self, o: V3) -> V3 {
        V3(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl std::ops::Mul<f64> for V3 {
    type Output = V3;
    fn mul(self, s: f64) -> V3 {
        V3(self.0.map(|x| x * s))
    }
}

fn polar(v: [f64; 3]) -> Octon {
    Octon::polar_real(v)
}

fn em_coupling(k: &PhysicalConstants) -> f64 {
    k.e / (k.hbar * k.c)
}

/// (∇, A) + (1/c)∂Φ/∂t by central differences, maximum over evaluated points.
pub fn lorentz_gauge_residual(f: &SampledFields, k: &PhysicalConstants) -> f64 {
    let spec = &f.spec;
    let get_a = |s: usize, p: [usize; 3]| V3(f.a[f.at(s, p)]);
    let get_phi = |s: usize, p: [usize; 3]| f.phi[f.at(s, p)];
    (0..spec.points())
        .map(|idx| spec.unflatten(idx))
        .filter(|&p| spec.in_core(p))
        .map(|p| {
            let div: f64 = (0..3).map(|ax| central(get_a, spec, MID, p, ax).0[ax]).sum();
            (div + time_central(get_phi, spec, MID, p) / k.c).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest magnitude of the sampled potentials, used to scale the gauge tolerance.
pub fn potential_scale(f: &SampledFields) -> f64 {
    let a = f.a.iter().flat_map(|v| v.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
    f.phi.iter().fold(a, |m, x| m.max(x.abs())).max(1.0)
}

/// Gauge tolerance 2h²·(potential scale): the discrete divergence of an exactly
/// gauge-compatible pair is O(h²).
pub fn gauge_tolerance(f: &SampledFields) -> f64 {
    let h = f.spec.spacing.iter().cloned().fold(f.spec.dt, f64::max);
    2.0 * h * h * potential_scale(f)
}

/// Left factor times right factor of the coupled second-order operator, each
/// applied by central differences, plus the mass term.
fn factored_operator(f: &SampledFields, k: &PhysicalConstants, exec: Execution) -> Vec<Option<Octon>> {
    let spec = f.spec;
    let a = em_coupling(k);
    let n = spec.points();
    let get_psi = |s: usize, p: [usize; 3]| f.psi[f.at(s, p)];
    // (D0 + D)ψ on slices 1..=3.
    let inner: Vec<Option<Octon>> = par_map(exec, 3 * n, |i| {
        let s = 1 + i / n;
        let p = spec.unflatten(i % n);
        if !spec.has_margin(p, 1) {
            return None;
        }
        let psi = get_psi(s, p);
        let d0 = time_central(get_psi, &spec, s, p) * (1.0 / k.c) + psi.scale(XI * (a * f.phi[f.at(s, p)]));
        let grad = Basis::POLAR
            .iter()
            .enumerate()
            .fold(Octon::zero(), |acc, (ax, b)| acc + Octon::basis(*b) * central(get_psi, &spec, s, p, ax));
        let d = grad - (polar(f.a[f.at(s, p)]) * psi).scale(XI * a);
        Some(d0 + d)
    });
    let get_inner = |s: usize, p: [usize; 3]| inner[(s - 1) * n + spec.flatten(p)].unwrap_or_default();
    let mu2 = k.mu() * k.mu();
    par_map(exec, n, |idx| {
        let p = spec.unflatten(idx);
        if !spec.in_core(p) {
            return None;
        }
        let chi = get_inner(MID, p);
        let d0 = time_central(get_inner, &spec, MID, p) * (1.0 / k.c) + chi.scale(XI * (a * f.phi[f.at(MID, p)]));
        let grad = Basis::POLAR
            .iter()
            .enumerate()
            .fold(Octon::zero(), |acc, (ax, b)| acc + Octon::basis(*b) * central(get_inner, &spec, MID, p, ax));
        let d = grad - (polar(f.a[f.at(MID, p)]) * chi).scale(XI * a);
        Some(d0 - d + get_psi(MID, p) * mu2)
    })
}

/// Electric and magnetic fields E = −∇Φ − (1/c)∂A/∂t and H = curl A at a point.
fn em_fields(f: &SampledFields, k: &PhysicalConstants, p: [usize; 3]) -> ([f64; 3], [f64; 3]) {
    let spec = &f.spec;
    let get_a = |s: usize, q: [usize; 3]| V3(f.a[f.at(s, q)]);
    let get_phi = |s: usize, q: [usize; 3]| f.phi[f.at(s, q)];
    let da: [[f64; 3]; 3] = std::array::from_fn(|ax| central(get_a, spec, MID, p, ax).0);
    let dta = time_central(get_a, spec, MID, p).0;
    let e = std::array::from_fn(|i| -central(get_phi, spec, MID, p, i) - dta[i] / k.c);
    let h = [da[1][2] - da[2][1], da[2][0] - da[0][2], da[0][1] - da[1][0]];
    (e, h)
}

/// The expanded second-order operator:
/// [1/c²∂t² − Δ + 2ξa((A,∇) + (Φ/c)∂t) + m²c²/ħ² + a²(A² − Φ²)]ψ − aHψ + ξaEψ
/// with a = e/(ħc), using compact second-difference stencils.
fn expanded_operator(f: &SampledFields, k: &PhysicalConstants, exec: Execution) -> Vec<Option<Octon>> {
    let spec = f.spec;
    let a = em_coupling(k);
    let mu2 = k.mu() * k.mu();
    let get_psi = |s: usize, p: [usize; 3]| f.psi[f.at(s, p)];
    par_map(exec, spec.points(), |idx| {
        let p = spec.unflatten(idx);
        if !spec.in_core(p) {
            return None;
        }
        let psi = get_psi(MID, p);
        let i = f.at(MID, p);
        let (phi, av) = (f.phi[i], f.a[i]);
        let dtt = (get_psi(MID + 1, p) + get_psi(MID - 1, p) - psi * 2.0) * (1.0 / (spec.dt * spec.dt * k.c * k.c));
        let lap = (0..3).fold(Octon::zero(), |acc, ax| acc + second(get_psi, &spec, MID, p, ax));
        let a_grad = (0..3).fold(Octon::zero(), |acc, ax| acc + central(get_psi, &spec, MID, p, ax) * av[ax]);
        let dt = time_central(get_psi, &spec, MID, p) * (phi / k.c);
        let a2 = av.iter().map(|x| x * x).sum::<f64>();
        let (e, h) = em_fields(f, k, p);
        Some(
            dtt - lap + (a_grad + dt).scale(XI * (2.0 * a)) + psi * (mu2 + a * a * (a2 - phi * phi))
                - Octon::axial_real(h) * psi * a
                + (polar(e) * psi).scale(XI * a),
        )
    })
}

fn max_difference(x: &[Option<Octon>], y: &[Option<Octon>]) -> f64 {
    x.iter()
        .zip(y)
        .filter_map(|(a, b)| Some(a.as_ref()?.dist(b.as_ref()?)))
        .fold(0.0, f64::max)
}

/// Max-norm difference between the factored coupled operator evaluated by
/// nested central differences and its expanded form. Requires the Lorentz gauge.
pub fn em_expansion_residual(f: &SampledFields, k: &PhysicalConstants) -> Result<f64> {
    em_expansion_residual_with(f, k, Execution::best())
}

pub fn em_expansion_residual_with(f: &SampledFields, k: &PhysicalConstants, exec: Execution) -> Result<f64> {
    let residual = lorentz_gauge_residual(f, k);
    let tolerance = gauge_tolerance(f);
    if !(residual <= tolerance) {
        return Err(Error::GaugeViolated { residual, tolerance });
    }
    Ok(max_difference(&factored_operator(f, k, exec), &expanded_operator(f, k, exec)))
}

/// (1/2m)(−ξħ∇ − (e/c)A)²ψ + eΦψ by nested central differences on the middle slice.
fn factored_hamiltonian(f: &SampledFields, k: &PhysicalConstants, exec: Execution) -> Vec<Option<Octon>> {
    let spec = f.spec;
    let n = spec.points();
    let momentum = |get: &dyn Fn(usize, [usize; 3]) -> Octon, p: [usize; 3]| {
        let grad = Basis::POLAR
            .iter()
            .enumerate()
            .fold(Octon::zero(), |acc, (ax, b)| acc + Octon::basis(*b) * central(get, &spec, MID, p, ax));
        grad.scale(-XI * k.hbar) - polar(f.a[f.at(MID, p)]) * get(MID, p) * (k.e / k.c)
    };
    let get_psi = |s: usize, p: [usize; 3]| f.psi[f.at(s, p)];
    let once: Vec<Octon> = par_map(exec, n, |idx| {
        let p = spec.unflatten(idx);
        if spec.has_margin(p, 1) {
            momentum(&get_psi, p)
        } else {
            Octon::zero()
        }
    });
    let get_once = |_: usize, p: [usize; 3]| once[spec.flatten(p)];
    par_map(exec, n, |idx| {
        let p = spec.unflatten(idx);
        if !spec.in_core(p) {
            return None;
        }
        Some(momentum(&get_once, p) * (0.5 / k.m) + get_psi(MID, p) * (k.e * f.phi[f.at(MID, p)]))
    })
}

/// −ħ²/2m Δψ + ξħe/(2mc)(∇,A)ψ + ξħe/(mc)(A,∇)ψ + e²A²/(2mc²)ψ + eΦψ − ħe/(2mc)Hψ.
fn expanded_hamiltonian(f: &SampledFields, k: &PhysicalConstants, exec: Execution) -> Vec<Option<Octon>> {
    let spec = f.spec;
    let get_psi = |s: usize, p: [usize; 3]| f.psi[f.at(s, p)];
    let get_a = |s: usize, q: [usize; 3]| V3(f.a[f.at(s, q)]);
    let g = k.hbar * k.e / (2.0 * k.m * k.c);
    par_map(exec, spec.points(), |idx| {
        let p = spec.unflatten(idx);
        if !spec.in_core(p) {
            return None;
        }
        let psi = get_psi(MID, p);
        let i = f.at(MID, p);
        let (phi, av) = (f.phi[i], f.a[i]);
        let lap = (0..3).fold(Octon::zero(), |acc, ax| acc + second(get_psi, &spec, MID, p, ax));
        let a_grad = (0..3).fold(Octon::zero(), |acc, ax| acc + central(get_psi, &spec, MID, p, ax) * av[ax]);
        let div: f64 = (0..3).map(|ax| central(get_a, &spec, MID, p, ax).0[ax]).sum();
        let (_, h) = em_fields(f, k, p);
        let a2 = av.iter().map(|x| x * x).sum::<f64>();
        Some(
            lap * (-k.hbar * k.hbar / (2.0 * k.m))
                + psi.scale(XI * (g * div))
                + a_grad.scale(XI * (2.0 * g))
                + psi * (k.e * k.e * a2 / (2.0 * k.m * k.c * k.c) + k.e * phi)
                - Octon::axial_real(h) * psi * g,
        )
    })
}

/// Max-norm difference between the nonrelativistic Hamiltonian as an octonic
/// square and its expansion. No gauge condition is needed.
pub fn hamiltonian_expansion_residual(f: &SampledFields, k: &PhysicalConstants) -> f64 {
    hamiltonian_expansion_residual_with(f, k, Execution::best())
}

pub fn hamiltonian_expansion_residual_with(f: &SampledFields, k: &PhysicalConstants, exec: Execution) -> f64 {
    max_difference(&factored_hamiltonian(f, k, exec), &expanded_hamiltonian(f, k, exec))
}

/// Ratio of successive residuals under h → h/2; 4 for a second-order method.
pub fn convergence_ratio(coarse: f64, fine: f64) -> f64 {
    coarse / fine
}

/// Smooth octon test field: each component a distinct travelling wave plus a
/// standing part, periodic on [0, 2π)³.
pub fn trigonometric_psi(t: f64, r: [f64; 3]) -> Octon {
    let [x, y, z] = r;
    Octon::new(std::array::from_fn(|b| {
        let bf = b as f64;
        let kx = (b % 2) as f64;
        let ky = ((b / 2) % 2) as f64;
        let kz = (b / 4) as f64;
        let w = 0.3 + 0.1 * bf;
        C64::from_polar(1.0 + 0.1 * bf, kx * x + ky * y - kz * z - w * t) + C64::new((y - 0.3 * bf).sin() * z.cos(), 0.0)
    }))
}

/// Φ = sin(x + y + z − √3ct).
pub fn wave_phi(c: f64) -> impl Fn(f64, [f64; 3]) -> f64 {
    move |t, [x, y, z]| (x + y + z - 3f64.sqrt() * c * t).sin()
}

/// A = (1,1,1)/√3·Φ + a(1,−1,0)cos(z − ct) + (0,0,1)sin x, which with
/// [`wave_phi`] satisfies the Lorentz gauge exactly.
pub fn wave_a(c: f64, amplitude: f64) -> impl Fn(f64, [f64; 3]) -> [f64; 3] {
    move |t, [x, y, z]| {
        let s = (x + y + z - 3f64.sqrt() * c * t).sin() / 3f64.sqrt();
        let w = amplitude * (z - c * t).cos();
        [s + w, s - w, s + x.sin()]
    }
}

/// Periodic trigonometric case with travelling-wave potentials.
pub fn trigonometric_case(n: usize, k: &PhysicalConstants) -> SampledFields {
    SampledFields::sample(GridSpec::periodic_cube(n), trigonometric_psi, wave_phi(k.c), wave_a(k.c, 0.7))
}

/// Landau gauge A = Bx·j, Φ = 0 on the closed cube [−1, 1]³.
pub fn landau_gauge_case(n: usize, b: f64) -> SampledFields {
    SampledFields::sample(GridSpec::closed_cube(n, 1.0), trigonometric_psi, |_, _| 0.0, move |_, r| [0.0, b * r[0], 0.0])
}

/// Free case Φ = A = 0.
pub fn free_case(n: usize) -> SampledFields {
    SampledFields::sample(GridSpec::periodic_cube(n), trigonometric_psi, |_, _| 0.0, |_, _| [0.0; 3])
}

/// For constant potentials the coupled operator on a plane wave equals the
/// free Klein-Gordon symbol at shifted E − eΦ, p − (e/c)A; returns the
/// max-norm difference.
pub fn constant_potential_residual(
    energy: f64,
    p: [f64; 3],
    amplitude: &Octon,
    phi: f64,
    a: [f64; 3],
    k: &PhysicalConstants,
) -> f64 {
    let coupling = em_coupling(k);
    // (1/c)∂t + ξaΦ on the plane wave, and ∇ − ξaA.
    let d0 = tau(energy, k) + XI * (coupling * phi);
    let d = kappa(p, k) - Octon::polar_real(a).scale(XI * coupling);
    let minus = left_multiplication_by(&(Octon::scalar(d0) - d));
    let plus = left_multiplication_by(&(Octon::scalar(d0) + d));
    let lhs = minus.compose(&plus).apply(amplitude) + *amplitude * (k.mu() * k.mu());
    let e_shift = energy - k.e * phi;
    let p_shift: [f64; 3] = std::array::from_fn(|i| p[i] - k.e * a[i] / k.c);
    lhs.dist(&(*amplitude * kg_symbol(e_shift, p_shift, k)))
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    shape: [usize; 3],
    spacing: [f64; 3],
    origin: [f64; 3],
    dt: f64,
    periodic: bool,
    time_slices: usize,
    /// Per point: 16 f64 for ψ (re, im), 1 for Φ, 3 for A, little-endian.
    layout: String,
    units: String,
}

const LAYOUT: &str = "psi[8][re,im] phi a[3] f64le, slice-major then x, y, z";

/// Writes an 8-byte header length, the JSON header and the flat data.
pub fn save_fields(path: &Path, f: &SampledFields) -> Result<()> {
    let header = Header {
        shape: f.spec.shape,
        spacing: f.spec.spacing,
        origin: f.spec.origin,
        dt: f.spec.dt,
        periodic: f.spec.periodic,
        time_slices: TIME_SLICES,
        layout: LAYOUT.into(),
        units: "natural (hbar = c = 1 unless stated by the caller)".into(),
    };
    let json = serde_json::to_vec(&header).map_err(|e| Error::Io(e.to_string()))?;
    let mut w = BufWriter::new(File::create(path).map_err(|e| Error::Io(e.to_string()))?);
    let io = |e: std::io::Error| Error::Io(e.to_string());
    w.write_all(&(json.len() as u64).to_le_bytes()).map_err(io)?;
    w.write_all(&json).map_err(io)?;
    for i in 0..f.psi.len() {
        for z in f.psi[i].components() {
            w.write_all(&z.re.to_le_bytes()).map_err(io)?;
            w.write_all(&z.im.to_le_bytes()).map_err(io)?;
        }
        w.write_all(&f.phi[i].to_le_bytes()).map_err(io)?;
        for x in f.a[i] {
            w.write_all(&x.to_le_bytes()).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

pub fn load_fields(path: &Path) -> Result<SampledFields> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    let mut r = BufReader::new(File::open(path).map_err(io)?);
    let mut len = [0u8; 8];
    r.read_exact(&mut len).map_err(io)?;
    let mut json = vec![0u8; u64::from_le_bytes(len) as usize];
    r.read_exact(&mut json).map_err(io)?;
    let h: Header = serde_json::from_slice(&json).map_err(|e| Error::Io(e.to_string()))?;
    if h.time_slices != TIME_SLICES {
        return Err(Error::Io(format!("expected {TIME_SLICES} time slices, found {}", h.time_slices)));
    }
    let spec = GridSpec { shape: h.shape, spacing: h.spacing, origin: h.origin, dt: h.dt, periodic: h.periodic };
    let total = TIME_SLICES * spec.points();
    let mut next = || -> Result<f64> {
        let mut b = [0u8; 8];
        r.read_exact(&mut b).map_err(io)?;
        Ok(f64::from_le_bytes(b))
    };
    let mut f = SampledFields { spec, psi: Vec::with_capacity(total), phi: Vec::with_capacity(total), a: Vec::with_capacity(total) };
    for _ in 0..total {
        let mut c = [C64::default(); 8];
        for z in c.iter_mut() {
            *z = C64::new(next()?, next()?);
        }
        f.psi.push(Octon::new(c));
        f.phi.push(next()?);
        f.a.push([next()?, next()?, next()?]);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn gauge_of_wave_potentials_is_second_order() {
        let f = trigonometric_case(16, &k());
        let h = f.spec.spacing[0];
        let r = lorentz_gauge_residual(&f, &k());
        assert!(r < 0.6 * h * h && r > 0.5 * h * h, "{r} vs {}", h * h);
    }

    #[test]
    fn violated_gauge_is_rejected() {
        let f = SampledFields::sample(GridSpec::periodic_cube(16), trigonometric_psi, |_, _| 0.0, |_, r| [r[0].sin(), 0.0, 0.0]);
        assert!(matches!(em_expansion_residual(&f, &k()), Err(Error::GaugeViolated { .. })));
    }

    #[test]
    fn free_case_converges() {
        let a = em_expansion_residual(&free_case(16), &k()).unwrap();
        let b = em_expansion_residual(&free_case(32), &k()).unwrap();
        let r = convergence_ratio(a, b);
        assert!((3.5..=4.5).contains(&r), "{a} {b} {r}");
    }

    #[test]
    fn coupled_case_converges() {
        let a = em_expansion_residual(&trigonometric_case(16, &k()), &k()).unwrap();
        let b = em_expansion_residual(&trigonometric_case(32, &k()), &k()).unwrap();
        let r = convergence_ratio(a, b);
        assert!((3.5..=4.5).contains(&r), "{a} {b} {r}");
    }

    #[test]
    fn landau_gauge_converges() {
        let r: Vec<f64> = [9, 17, 33].iter().map(|&n| em_expansion_residual(&landau_gauge_case(n, 1.0), &k()).unwrap()).collect();
        for w in r.windows(2) {
            let q = convergence_ratio(w[0], w[1]);
            assert!((3.5..=4.5).contains(&q), "{r:?}");
        }
    }

    #[test]
    fn hamiltonian_expansion_converges_without_gauge() {
        let case = |n| {
            SampledFields::sample(GridSpec::periodic_cube(n), trigonometric_psi, wave_phi(1.0), |_, r| [r[1].sin(), r[2].cos() * 0.5, r[0].sin()])
        };
        let a = hamiltonian_expansion_residual(&case(16), &k());
        let b = hamiltonian_expansion_residual(&case(32), &k());
        let r = convergence_ratio(a, b);
        assert!((3.5..=4.5).contains(&r), "{a} {b} {r}");
    }

    #[test]
    fn sequential_matches_parallel() {
        let f = trigonometric_case(8, &k());
        let a = em_expansion_residual_with(&f, &k(), Execution::Sequential).unwrap();
        let b = em_expansion_residual_with(&f, &k(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constant_potentials_shift_the_plane_wave() {
        let amp = Octon::new(std::array::from_fn(|i| C64::new(1.0 - 0.2 * i as f64, 0.3)));
        let r = constant_potential_residual(1.3, [0.2, -0.5, 0.9], &amp, 0.4, [0.7, 0.1, -0.6], &k());
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn binary_round_trip() {
        let f = landau_gauge_case(5, 2.0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fields.bin");
        save_fields(&path, &f).unwrap();
        assert_eq!(load_fields(&path).unwrap(), f);
    }
}
