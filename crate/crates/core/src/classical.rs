//! Rank-3 actions of classical groups on 2-spaces and on singular points.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Elem, Fq};
use crate::orbits::{pair_orbit_parity_witness, subset_orbit_labels, ActionStats, Method, ParityWitness};
use crate::symgrp::{Perm, StabChain};
use crate::{binomial, Error, Result};

/// Number of random triples examined for marks when `C(n, 3)` exceeds the cap.
const MARK_SAMPLES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Epsilon {
    Plus,
    Minus,
    /// Odd dimension.
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Form {
    Linear2Spaces,
    SymplecticPoints,
    UnitaryPoints,
    OrthogonalPoints(Epsilon),
}

/// A form type, dimension and field size such as `sp:d=4,q=3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassicalCase {
    pub form: Form,
    pub d: usize,
    pub q: u32,
}

impl ClassicalCase {
    pub fn new(form: Form, d: usize, q: u32) -> Result<Self> {
        let c = ClassicalCase { form, d, q };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidArgument(format!("{self}: {why}")));
        let d = self.d;
        match self.form {
            Form::Linear2Spaces if d < 4 => return bad("needs d ≥ 4"),
            Form::SymplecticPoints if d < 4 || !d.is_multiple_of(2) => return bad("needs even d ≥ 4"),
            Form::UnitaryPoints if d < 4 => return bad("needs d ≥ 4"),
            Form::OrthogonalPoints(e) => {
                if d < 5 {
                    return bad("needs d ≥ 5");
                }
                if (e == Epsilon::Parabolic) != (d % 2 == 1) {
                    return bad("parabolic forms need odd d, ± forms even d");
                }
                if e == Epsilon::Parabolic && self.q.is_multiple_of(2) {
                    return bad("odd-dimensional orthogonal groups need odd q");
                }
            }
            _ => {}
        }
        if d > 12 {
            return bad("dimension beyond desk scale");
        }
        Fq::of_order(self.field_order()).map(|_| ())
    }

    /// Order of the field the vectors live over: `q²` for unitary forms.
    pub fn field_order(&self) -> u32 {
        match self.form {
            Form::UnitaryPoints => self.q * self.q,
            _ => self.q,
        }
    }

    /// `|Ω|` from the closed-form count.
    pub fn expected_degree(&self) -> u128 {
        let q = self.q as i128;
        let d = self.d as u32;
        let pw = |k: u32| q.pow(k);
        let n = match self.form {
            Form::Linear2Spaces => (pw(d) - 1) * (pw(d - 1) - 1) / ((q * q - 1) * (q - 1)),
            Form::SymplecticPoints => (pw(d) - 1) / (q - 1),
            Form::UnitaryPoints => {
                let s = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
                (pw(d) - s(d)) * (pw(d - 1) - s(d - 1)) / (q * q - 1)
            }
            Form::OrthogonalPoints(Epsilon::Parabolic) => (pw(d - 1) - 1) / (q - 1),
            Form::OrthogonalPoints(e) => {
                let m = d / 2;
                let s = if e == Epsilon::Plus { 1 } else { -1 };
                (pw(m) - s) * (pw(m - 1) + s) / (q - 1)
            }
        };
        n as u128
    }

    /// Order of the simple group `X` acting faithfully on `Ω`.
    pub fn expected_group_order(&self) -> u128 {
        let q = self.q as u128;
        let d = self.d as u32;
        let gcd = |a: u128, b: u128| {
            let (mut a, mut b) = (a, b);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let prod = |f: &dyn Fn(u32) -> u128, lo: u32, hi: u32| (lo..=hi).map(f).product::<u128>();
        match self.form {
            Form::Linear2Spaces => q.pow(d * (d - 1) / 2) * prod(&|i| q.pow(i) - 1, 2, d) / gcd(d as u128, q - 1),
            Form::SymplecticPoints => {
                let m = d / 2;
                q.pow(m * m) * prod(&|i| q.pow(2 * i) - 1, 1, m) / gcd(2, q - 1)
            }
            Form::UnitaryPoints => {
                let term = |i: u32| if i.is_multiple_of(2) { q.pow(i) - 1 } else { q.pow(i) + 1 };
                q.pow(d * (d - 1) / 2) * prod(&term, 2, d) / gcd(d as u128, q + 1)
            }
            Form::OrthogonalPoints(Epsilon::Parabolic) => {
                let m = (d - 1) / 2;
                q.pow(m * m) * prod(&|i| q.pow(2 * i) - 1, 1, m) / 2
            }
            Form::OrthogonalPoints(e) => {
                let m = d / 2;
                let qm = if e == Epsilon::Plus { q.pow(m) - 1 } else { q.pow(m) + 1 };
                let so = q.pow(m * (m - 1)) * qm * prod(&|i| q.pow(2 * i) - 1, 1, m - 1);
                if q.is_multiple_of(2) {
                    so
                } else {
                    let centre = gcd(4, qm) / 2;
                    so / 2 / centre
                }
            }
        }
    }

    /// The bound on `f_3`: 6 for linear groups and large rank, else 5.
    pub fn f3_bound(&self) -> u64 {
        let small = match self.form {
            Form::Linear2Spaces => false,
            Form::SymplecticPoints => self.d < 6,
            Form::UnitaryPoints => self.d < 6,
            Form::OrthogonalPoints(_) => self.d < 7,
        };
        if small {
            5
        } else {
            6
        }
    }

    /// Upper bound on `h(X)`: 3 for `PΩ⁺_d(q)` with `4 | d ≥ 8`, else 2.
    pub fn h_max(&self) -> usize {
        match self.form {
            Form::OrthogonalPoints(Epsilon::Plus) if self.d.is_multiple_of(4) && self.d >= 8 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ClassicalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.form {
            Form::Linear2Spaces => "sl",
            Form::SymplecticPoints => "sp",
            Form::UnitaryPoints => "su",
            Form::OrthogonalPoints(Epsilon::Plus) => "o+",
            Form::OrthogonalPoints(Epsilon::Minus) => "o-",
            Form::OrthogonalPoints(Epsilon::Parabolic) => "o",
        };
        write!(f, "{tag}:d={},q={}", self.d, self.q)
    }
}

impl FromStr for ClassicalCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad classical case {s:?}"));
        let (tag, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let form = match tag.trim() {
            "sl" => Form::Linear2Spaces,
            "sp" => Form::SymplecticPoints,
            "su" => Form::UnitaryPoints,
            "o+" => Form::OrthogonalPoints(Epsilon::Plus),
            "o-" => Form::OrthogonalPoints(Epsilon::Minus),
            "o" => Form::OrthogonalPoints(Epsilon::Parabolic),
            _ => return Err(bad()),
        };
        let (mut d, mut q) = (None, None);
        for kv in rest.split(',') {
            match kv.trim().split_once('=') {
                Some(("d", v)) => d = Some(v.trim().parse().map_err(|_| bad())?),
                Some(("q", v)) => q = Some(v.trim().parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        ClassicalCase::new(form, d.ok_or_else(bad)?, q.ok_or_else(bad)?)
    }
}

type Vector = Vec<Elem>;
/// Column-action matrix stored by rows.
type Matrix = Vec<Vector>;

/// Vector-space helpers over a fixed field.
struct Geometry {
    f: Fq,
    case: ClassicalCase,
    /// `ν` with `t² + t + ν` irreducible, for minus-type forms.
    nu: Elem,
}

impl Geometry {
    fn new(case: ClassicalCase) -> Result<Self> {
        let f = Fq::of_order(case.field_order())?;
        let nu = f.elements().find(|&nu| f.elements().all(|t| f.add(f.add(f.mul(t, t), t), nu) != 0)).unwrap_or(0);
        Ok(Geometry { f, case, nu })
    }

    fn d(&self) -> usize {
        self.case.d
    }

    fn conj(&self, a: Elem) -> Elem {
        match self.case.form {
            Form::UnitaryPoints => self.f.pow(a, self.case.q as u64),
            _ => a,
        }
    }

    fn dot(&self, x: &[Elem], y: &[Elem]) -> Elem {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.f.add(acc, self.f.mul(a, b)))
    }

    /// Hyperbolic pairs `(i, partner(i))`; remaining coordinates form the anisotropic part.
    fn partner(&self, i: usize) -> Option<usize> {
        let d = self.d();
        match self.case.form {
            Form::Linear2Spaces => None,
            Form::SymplecticPoints | Form::OrthogonalPoints(Epsilon::Plus) => Some((i + d / 2) % d),
            Form::UnitaryPoints => (2 * i + 1 != d).then(|| d - 1 - i),
            Form::OrthogonalPoints(Epsilon::Parabolic) => {
                let m = d / 2;
                (i < 2 * m).then(|| (i + m) % (2 * m))
            }
            Form::OrthogonalPoints(Epsilon::Minus) => {
                let m = d / 2 - 1;
                (i < 2 * m).then(|| (i + m) % (2 * m))
            }
        }
    }

    /// The bilinear, alternating or hermitian form (polar form for quadratic forms).
    fn form(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.f;
        let d = self.d();
        match self.case.form {
            Form::Linear2Spaces => 0,
            Form::SymplecticPoints => {
                let m = d / 2;
                (0..m).fold(0, |acc, i| f.add(acc, f.sub(f.mul(x[i], y[i + m]), f.mul(x[i + m], y[i]))))
            }
            Form::UnitaryPoints => (0..d).fold(0, |acc, i| f.add(acc, f.mul(x[i], self.conj(y[d - 1 - i])))),
            Form::OrthogonalPoints(_) => {
                let mut s = Vec::with_capacity(d);
                for i in 0..d {
                    s.push(f.add(x[i], y[i]));
                }
                f.sub(f.sub(self.quad(&s), self.quad(x)), self.quad(y))
            }
        }
    }

    fn quad(&self, x: &[Elem]) -> Elem {
        let f = &self.f;
        let d = self.d();
        match self.case.form {
            Form::OrthogonalPoints(Epsilon::Plus) => {
                let m = d / 2;
                (0..m).fold(0, |acc, i| f.add(acc, f.mul(x[i], x[i + m])))
            }
            Form::OrthogonalPoints(Epsilon::Parabolic) => {
                let m = d / 2;
                let h = (0..m).fold(0, |acc, i| f.add(acc, f.mul(x[i], x[i + m])));
                f.add(h, f.mul(x[d - 1], x[d - 1]))
            }
            Form::OrthogonalPoints(Epsilon::Minus) => {
                let m = d / 2 - 1;
                let h = (0..m).fold(0, |acc, i| f.add(acc, f.mul(x[i], x[i + m])));
                let (a, b) = (x[d - 2], x[d - 1]);
                let an = f.add(f.add(f.mul(a, a), f.mul(a, b)), f.mul(self.nu, f.mul(b, b)));
                f.add(h, an)
            }
            _ => self.form(x, x),
        }
    }

    fn singular(&self, x: &[Elem]) -> bool {
        match self.case.form {
            Form::Linear2Spaces | Form::SymplecticPoints => true,
            Form::UnitaryPoints => self.form(x, x) == 0,
            Form::OrthogonalPoints(_) => self.quad(x) == 0,
        }
    }

    /// Scales so the first nonzero coordinate is 1.
    fn normalize(&self, x: &mut [Elem]) {
        if let Some(&lead) = x.iter().find(|&&a| a != 0) {
            let inv = self.f.inv(lead).unwrap_or(1);
            for a in x.iter_mut() {
                *a = self.f.mul(*a, inv);
            }
        }
    }

    /// Reduced row echelon form in place; returns the rank.
    fn rref(&self, rows: &mut Vec<Vector>) -> usize {
        let f = &self.f;
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
            rows.swap(rank, p);
            let inv = f.inv(rows[rank][c]).unwrap_or(1);
            for a in rows[rank].iter_mut() {
                *a = f.mul(*a, inv);
            }
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c] != 0 {
                    let k = row[c];
                    for (a, &b) in row.iter_mut().zip(&pivot) {
                        *a = f.sub(*a, f.mul(k, b));
                    }
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rank
    }

    fn rank(&self, rows: &[Vector]) -> usize {
        let mut r = rows.to_vec();
        self.rref(&mut r)
    }

    fn det(&self, m: &[Vector]) -> Elem {
        let f = &self.f;
        let mut a = m.to_vec();
        let n = a.len();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
            if p != c {
                a.swap(p, c);
                det = f.neg(det);
            }
            det = f.mul(det, a[c][c]);
            let inv = f.inv(a[c][c]).unwrap_or(1);
            for r in c + 1..n {
                if a[r][c] != 0 {
                    let k = f.mul(a[r][c], inv);
                    for j in c..n {
                        let t = f.mul(k, a[c][j]);
                        a[r][j] = f.sub(a[r][j], t);
                    }
                }
            }
        }
        det
    }

    fn apply(&self, m: &Matrix, x: &[Elem]) -> Vector {
        m.iter().map(|row| self.dot(row, x)).collect()
    }

    fn unit(&self, i: usize) -> Vector {
        let mut v = vec![0; self.d()];
        v[i] = 1;
        v
    }

    /// Matrix of a linear map given on basis vectors.
    fn matrix_of(&self, map: impl Fn(&[Elem]) -> Vector) -> Matrix {
        let d = self.d();
        let cols: Vec<Vector> = (0..d).map(|j| map(&self.unit(j))).collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect()
    }

    fn preserves_form(&self, m: &Matrix) -> bool {
        let d = self.d();
        let images: Vec<Vector> = (0..d).map(|j| self.apply(m, &self.unit(j))).collect();
        match self.case.form {
            Form::Linear2Spaces => self.det(m) == 1,
            _ => {
                let gram_ok = (0..d).all(|i| {
                    (0..d).all(|j| self.form(&images[i], &images[j]) == self.form(&self.unit(i), &self.unit(j)))
                });
                let quad_ok = !matches!(self.case.form, Form::OrthogonalPoints(_))
                    || (0..d).all(|i| self.quad(&images[i]) == self.quad(&self.unit(i)));
                gram_ok && quad_ok && self.det(m) == 1
            }
        }
    }

    fn all_vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        let q = self.f.q();
        let d = self.d();
        (0..(q as u64).pow(d as u32)).map(move |mut k| {
            let mut v = vec![0; d];
            for a in v.iter_mut() {
                *a = (k % q as u64) as Elem;
                k /= q as u64;
            }
            v
        })
    }

    /// Root elements generating the group.
    fn generators(&self, points: &[Vector]) -> Vec<Matrix> {
        let f = &self.f;
        let d = self.d();
        let basis = f.additive_basis();
        let small: Vec<&Vector> = points.iter().filter(|v| v.iter().filter(|&&a| a != 0).count() <= 2).collect();
        let mut gens = Vec::new();
        match self.case.form {
            Form::Linear2Spaces => {
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            for &t in &basis {
                                let mut m = self.matrix_of(|x| x.to_vec());
                                m[i][j] = t;
                                gens.push(m);
                            }
                        }
                    }
                }
            }
            Form::SymplecticPoints => {
                // x ↦ x + t B(x, v) v
                for v in &small {
                    for &t in &basis {
                        gens.push(self.matrix_of(|x| {
                            let c = f.mul(t, self.form(x, v));
                            x.iter().zip(v.iter()).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
                        }));
                    }
                }
            }
            Form::UnitaryPoints => {
                // x ↦ x + t h(x, v) v with t + t̄ = 0
                let traceless: Vec<Elem> = f.elements().filter(|&t| t != 0 && f.add(t, self.conj(t)) == 0).collect();
                let q0 = Fq::of_order(self.case.q).map(|g| g.e()).unwrap_or(1) as usize;
                let mut chosen: Vec<Elem> = Vec::new();
                for &t in &traceless {
                    if chosen.len() < q0 && !self.in_prime_span(&chosen, t) {
                        chosen.push(t);
                    }
                }
                for v in &small {
                    for &t in &chosen {
                        gens.push(self.matrix_of(|x| {
                            let c = f.mul(t, self.form(x, v));
                            x.iter().zip(v.iter()).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
                        }));
                    }
                }
            }
            Form::OrthogonalPoints(_) => {
                // Eichler transformations x ↦ x + B(x,u) w − B(x,w) u − Q(w) B(x,u) u for singular u ⊥ w.
                let ws: Vec<Vector> = (0..d).map(|j| self.unit(j)).collect();
                for i in 0..d {
                    if self.partner(i).is_none() {
                        continue;
                    }
                    let u = self.unit(i);
                    for w0 in &ws {
                        if self.form(&u, w0) != 0 || w0 == &u {
                            continue;
                        }
                        for &t in &basis {
                            let w: Vector = w0.iter().map(|&a| f.mul(a, t)).collect();
                            let qw = self.quad(&w);
                            gens.push(self.matrix_of(|x| {
                                let bu = self.form(x, &u);
                                let bw = self.form(x, &w);
                                let cu = f.add(bw, f.mul(qw, bu));
                                (0..d).map(|k| f.sub(f.add(x[k], f.mul(bu, w[k])), f.mul(cu, u[k]))).collect()
                            }));
                        }
                    }
                }
            }
        }
        gens
    }

    fn in_prime_span(&self, chosen: &[Elem], t: Elem) -> bool {
        let p = self.f.p();
        let k = chosen.len() as u32;
        (0..p.pow(k)).any(|mut c| {
            let mut s = 0;
            for &b in chosen {
                s = self.f.add(s, self.f.mul(self.f.from_int((c % p) as i64), b));
                c /= p;
            }
            s == t
        })
    }
}

/// A classical group acting on its rank-3 set `Ω`.
#[derive(Clone, Debug)]
pub struct ClassicalAction {
    pub case: ClassicalCase,
    field: Fq,
    /// Canonical representatives: normalized vectors, or a 2-space as its
    /// two RREF rows concatenated.
    pub omega: Vec<Vec<Elem>>,
    pub gens: Vec<Perm>,
    keys: Vec<u128>,
}

fn key_of(v: &[Elem], q: u32) -> u128 {
    v.iter().rev().fold(0u128, |acc, &a| acc * q as u128 + a as u128)
}

/// Builds `Ω` and the generator permutations, checking that each generator
/// preserves the form and permutes `Ω`.
pub fn build_action(case: &ClassicalCase) -> Result<ClassicalAction> {
    case.validate()?;
    let g = Geometry::new(*case)?;
    let q = g.f.q();
    let d = case.d;
    let width = if case.form == Form::Linear2Spaces { 2 * d } else { d };
    if (q as u128).checked_pow(width as u32).is_none() {
        return Err(Error::InvalidArgument(format!("{case}: representatives do not fit a 128-bit key")));
    }
    if case.expected_degree() > 200_000 {
        return Err(Error::CapExceeded { cap: 200_000, reached: case.expected_degree() as usize });
    }
    let mut omega: Vec<Vec<Elem>> = Vec::new();
    let mut seen = BTreeSet::new();
    match case.form {
        Form::Linear2Spaces => {
            let vs: Vec<Vector> = g.all_vectors().filter(|v| v.iter().any(|&a| a != 0)).collect();
            let pts: Vec<Vector> = vs.into_iter().filter(|v| v.iter().find(|&&a| a != 0) == Some(&1)).collect();
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    let mut rows = vec![a.clone(), b.clone()];
                    if g.rref(&mut rows) == 2 {
                        let flat: Vec<Elem> = rows.concat();
                        if seen.insert(key_of(&flat, q)) {
                            omega.push(flat);
                        }
                    }
                }
            }
        }
        _ => {
            for v in g.all_vectors() {
                if v.iter().find(|&&a| a != 0) == Some(&1) && g.singular(&v) {
                    omega.push(v);
                }
            }
        }
    }
    let mut keyed: Vec<(u128, Vec<Elem>)> = omega.into_iter().map(|v| (key_of(&v, q), v)).collect();
    keyed.sort();
    let keys: Vec<u128> = keyed.iter().map(|(k, _)| *k).collect();
    let omega: Vec<Vec<Elem>> = keyed.into_iter().map(|(_, v)| v).collect();
    if omega.len() as u128 != case.expected_degree() {
        return Err(Error::ClosureFailure(format!(
            "{case}: enumerated {} points, closed form gives {}",
            omega.len(),
            case.expected_degree()
        )));
    }
    let points: Vec<Vector> = if case.form == Form::Linear2Spaces { Vec::new() } else { omega.clone() };
    let mut gens = Vec::new();
    for m in g.generators(&points) {
        if !g.preserves_form(&m) {
            return Err(Error::ClosureFailure(format!("{case}: a generator does not preserve the form")));
        }
        let mut images = Vec::with_capacity(omega.len());
        for rep in &omega {
            let img = match case.form {
                Form::Linear2Spaces => {
                    let mut rows = vec![g.apply(&m, &rep[..d]), g.apply(&m, &rep[d..])];
                    g.rref(&mut rows);
                    rows.concat()
                }
                _ => {
                    let mut v = g.apply(&m, rep);
                    g.normalize(&mut v);
                    v
                }
            };
            let k = key_of(&img, q);
            let idx = keys
                .binary_search(&k)
                .map_err(|_| Error::ClosureFailure(format!("{case}: a generator maps a point outside Ω")))?;
            images.push(idx as u32);
        }
        let p = Perm::from_images(images)?;
        if !p.is_identity() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    Ok(ClassicalAction { case: *case, field: g.f, omega, gens, keys })
}

impl ClassicalAction {
    pub fn degree(&self) -> usize {
        self.omega.len()
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn index_of(&self, rep: &[Elem]) -> Option<usize> {
        self.keys.binary_search(&key_of(rep, self.field.q())).ok()
    }

    /// Order of the generated permutation group.
    pub fn group_order(&self) -> u128 {
        StabChain::from_generators(self.degree(), &self.gens).order()
    }

    /// Number of orbits on ordered pairs, including the diagonal.
    pub fn permutation_rank(&self) -> usize {
        permutation_rank(self.degree(), &self.gens)
    }

    /// An invariant of an unordered triple of points of `Ω`; triples with
    /// different marks lie in different orbits.
    pub fn triple_mark(&self, a: usize, b: usize, c: usize) -> Vec<u32> {
        let g = Geometry::new(self.case).expect("validated case");
        let d = self.case.d;
        let rep = |i: usize| self.omega[i].clone();
        match self.case.form {
            Form::Linear2Spaces => {
                let span = |ids: &[usize]| -> usize {
                    let rows: Vec<Vector> =
                        ids.iter().flat_map(|&i| [rep(i)[..d].to_vec(), rep(i)[d..].to_vec()]).collect();
                    g.rank(&rows)
                };
                let mut meets = [4 - span(&[a, b]), 4 - span(&[a, c]), 4 - span(&[b, c])];
                meets.sort_unstable();
                let total = span(&[a, b, c]);
                // dim(A ∩ B ∩ C) via dim(A ∩ B) + dim C − dim((A ∩ B) + C).
                let ab = intersection(&g, &rep(a), &rep(b), d);
                let triple = if ab.is_empty() {
                    0
                } else {
                    let mut rows = ab.clone();
                    rows.push(rep(c)[..d].to_vec());
                    rows.push(rep(c)[d..].to_vec());
                    ab.len() + 2 - g.rank(&rows)
                };
                vec![total as u32, meets[0] as u32, meets[1] as u32, meets[2] as u32, triple as u32]
            }
            _ => {
                let vs = [rep(a), rep(b), rep(c)];
                let dim = g.rank(&vs);
                let gram: Vec<Vector> = vs.iter().map(|x| vs.iter().map(|y| g.form(x, y)).collect()).collect();
                let mut perp = [(gram[0][1] == 0) as u32, (gram[0][2] == 0) as u32, (gram[1][2] == 0) as u32];
                perp.sort_unstable();
                let rad_dim = if dim == 3 { 3 - g.rank(&gram) } else { 0 };
                // Points orthogonal to both others.
                let in_rad = (0..3).filter(|&i| (0..3).all(|j| gram[i][j] == 0)).count();
                let delta = match self.case.form {
                    Form::OrthogonalPoints(_) if dim == 3 && rad_dim == 0 => 1 + g.f.is_square(g.det(&gram)) as u32,
                    _ => 0,
                };
                vec![dim as u32, perp[0], perp[1], perp[2], rad_dim as u32, in_rad as u32, delta]
            }
        }
    }
}

fn intersection(g: &Geometry, a: &[Elem], b: &[Elem], d: usize) -> Vec<Vector> {
    // Solve x·A = y·B over the 4 coefficients; the solution space gives the meet.
    let f = &g.f;
    let rows_a = [a[..d].to_vec(), a[d..].to_vec()];
    let rows_b = [b[..d].to_vec(), b[d..].to_vec()];
    let mut out = Vec::new();
    let q = f.q();
    for k in 1..q * q {
        let (s, t) = (k % q, k / q);
        let v: Vector = (0..d).map(|i| f.add(f.mul(s, rows_a[0][i]), f.mul(t, rows_a[1][i]))).collect();
        let mut rows = vec![rows_b[0].clone(), rows_b[1].clone(), v.clone()];
        if g.rref(&mut rows) == 2 {
            out.push(v);
        }
    }
    let mut basis = out;
    g.rref(&mut basis);
    basis
}

/// Number of orbits of `⟨gens⟩` on ordered pairs of points.
pub fn permutation_rank(n: usize, gens: &[Perm]) -> usize {
    let mut parent: Vec<u32> = (0..(n * n) as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for g in gens {
        for a in 0..n {
            for b in 0..n {
                let x = find(&mut parent, (a * n + b) as u32);
                let y = find(&mut parent, (g.apply(a) * n + g.apply(b)) as u32);
                if x != y {
                    parent[x.max(y) as usize] = x.min(y);
                }
            }
        }
    }
    (0..(n * n) as u32).filter(|&x| find(&mut parent, x) == x).count()
}

/// `f_1, f_2` by enumeration; `f_3` exactly when `C(n, 3) ≤ cap`, otherwise
/// the number of distinct triple marks, a lower bound.
pub fn rank3_stats(action: &ClassicalAction, cap: u64, seed: u64) -> Result<ActionStats> {
    let n = action.degree();
    let count = |labels: Vec<u32>| labels.iter().enumerate().filter(|(i, &l)| *i as u32 == l).count() as u64;
    let pair_cap = cap.max(binomial(n as u64, 2).min(u64::MAX as u128) as u64);
    let f1 = count(subset_orbit_labels(n, &action.gens, 1, pair_cap)?);
    let f2 = count(subset_orbit_labels(n, &action.gens, 2, pair_cap)?);
    let (f3, method) = if binomial(n as u64, 3) <= cap as u128 {
        (count(subset_orbit_labels(n, &action.gens, 3, cap)?), Method::Enumeration)
    } else {
        (triple_marks(action, seed).len() as u64, Method::Marks)
    };
    Ok(ActionStats::new(n as u64, [f1, f2, f3], method))
}

/// Distinct marks over all triples, or over a seeded sample when there are too many.
pub fn triple_marks(action: &ClassicalAction, seed: u64) -> BTreeSet<Vec<u32>> {
    let n = action.degree();
    let mut marks = BTreeSet::new();
    if binomial(n as u64, 3) <= MARK_SAMPLES as u128 {
        for c in 0..n {
            for b in 0..c {
                for a in 0..b {
                    marks.insert(action.triple_mark(a, b, c));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MARK_SAMPLES {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let c = rng.gen_range(0..n);
            if a != b && b != c && a != c {
                marks.insert(action.triple_mark(a, b, c));
            }
        }
    }
    marks
}

/// One case of the rank-3 battery.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct R3Entry {
    pub case: String,
    pub n: u64,
    pub n_expected: u64,
    pub rank: usize,
    pub stats: ActionStats,
    pub f3_bound: u64,
    pub distinct_marks: usize,
    pub h_max: usize,
    pub witness: Option<ParityWitness>,
    pub e3_ok: Option<bool>,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct R3Report {
    pub entries: Vec<R3Entry>,
}

impl R3Report {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// The cases `SL_4(2), SL_4(3), Sp_4(3), SU_4(2), SU_4(3), O_5(3), O^±_6(2)`.
pub fn default_cases() -> Vec<ClassicalCase> {
    ["sl:d=4,q=2", "sl:d=4,q=3", "sp:d=4,q=3", "su:d=4,q=2", "su:d=4,q=3", "o:d=5,q=3", "o+:d=6,q=2", "o-:d=6,q=2"]
        .iter()
        .map(|s| s.parse().expect("valid case"))
        .collect()
}

/// Checks degree, `f_1 = 1`, rank 3, `f_2 = 2`, the `f_3` bound, and for
/// even `n` a parity witness and `e_3 ≥ h_max + 1`.
pub fn rank3_battery(cases: &[ClassicalCase], cap: u64, seed: u64) -> Result<R3Report> {
    let mut entries = Vec::new();
    for case in cases {
        let action = build_action(case)?;
        let n = action.degree();
        let stats = rank3_stats(&action, cap, seed)?;
        let rank = action.permutation_rank();
        let marks = triple_marks(&action, seed).len();
        let mut failures = Vec::new();
        let n_expected = case.expected_degree() as u64;
        if n as u64 != n_expected {
            failures.push(format!("n = {n}, expected {n_expected}"));
        }
        if stats.f1 != 1 {
            failures.push(format!("f_1 = {}", stats.f1));
        }
        if rank != 3 {
            failures.push(format!("rank = {rank}"));
        }
        if stats.f2 != 2 {
            failures.push(format!("f_2 = {}", stats.f2));
        }
        let bound = case.f3_bound();
        if stats.f3 < bound {
            failures.push(format!("f_3 = {} < {bound}", stats.f3));
        }
        let h_max = case.h_max();
        let (witness, e3_ok) = if n % 2 == 0 {
            let w = pair_orbit_parity_witness(n, &action.gens, cap.max(binomial(n as u64, 2) as u64))?;
            if w.is_none() {
                failures.push("no parity witness".to_string());
            }
            let ok = stats.e3 > h_max as i64;
            if !ok {
                failures.push(format!("e_3 = {} < h_max + 1 = {}", stats.e3, h_max + 1));
            }
            (w, Some(ok))
        } else {
            (None, None)
        };
        entries.push(R3Entry {
            case: case.to_string(),
            n: n as u64,
            n_expected,
            rank,
            stats,
            f3_bound: bound,
            distinct_marks: marks,
            h_max,
            witness,
            e3_ok,
            pass: failures.is_empty(),
            failures,
        });
    }
    Ok(R3Report { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(s: &str) -> ClassicalCase {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_degrees() {
        for (s, n) in [
            ("sl:d=4,q=2", 35u128),
            ("sl:d=4,q=3", 130),
            ("sp:d=4,q=3", 40),
            ("su:d=4,q=2", 45),
            ("su:d=4,q=3", 280),
            ("o:d=5,q=3", 40),
            ("o+:d=6,q=2", 35),
            ("o-:d=6,q=2", 27),
        ] {
            assert_eq!(case(s).expected_degree(), n, "{s}");
        }
    }

    #[test]
    fn parse_round_trip_and_ranges() {
        for c in default_cases() {
            assert_eq!(c.to_string().parse::<ClassicalCase>().unwrap(), c);
        }
        assert!("sp:d=5,q=3".parse::<ClassicalCase>().is_err());
        assert!("o:d=6,q=3".parse::<ClassicalCase>().is_err());
        assert!("sl:d=3,q=2".parse::<ClassicalCase>().is_err());
        assert!("sl:d=4,q=6".parse::<ClassicalCase>().is_err());
    }

    #[test]
    fn points_match_brute_force_count() {
        // Singular points counted directly from all nonzero vectors.
        for s in ["sp:d=4,q=3", "su:d=4,q=2", "o:d=5,q=3", "o+:d=6,q=2", "o-:d=6,q=2"] {
            let c = case(s);
            let g = Geometry::new(c).unwrap();
            let nonzero_singular = g.all_vectors().filter(|v| v.iter().any(|&a| a != 0) && g.singular(v)).count();
            let fq = g.f.q() as usize;
            assert_eq!(nonzero_singular / (fq - 1), build_action(&c).unwrap().degree(), "{s}");
        }
    }

    #[test]
    fn generated_groups_have_the_simple_group_order() {
        for s in ["sl:d=4,q=2", "sp:d=4,q=3", "su:d=4,q=2", "o:d=5,q=3", "o+:d=6,q=2", "o-:d=6,q=2"] {
            let c = case(s);
            let a = build_action(&c).unwrap();
            assert_eq!(a.group_order(), c.expected_group_order(), "{s}");
        }
    }

    #[test]
    fn sl42_triples() {
        let a = build_action(&case("sl:d=4,q=2")).unwrap();
        let st = rank3_stats(&a, 10_000_000, 1).unwrap();
        assert_eq!((st.f1, st.f2), (1, 2));
        assert!(st.f3 >= 6);
        assert_eq!(st.method, Method::Enumeration);
        assert!(triple_marks(&a, 1).len() >= 6);
        assert_eq!(a.permutation_rank(), 3);
    }

    #[test]
    fn orthogonal_six_triples() {
        for (s, f3) in [("o+:d=6,q=2", 6), ("o-:d=6,q=2", 4)] {
            let a = build_action(&case(s)).unwrap();
            let st = rank3_stats(&a, 10_000_000, 1).unwrap();
            assert_eq!((st.f1, st.f2, st.f3), (1, 2, f3), "{s}");
        }
    }

    #[test]
    fn marks_are_orbit_invariants() {
        let a = build_action(&case("sp:d=4,q=3")).unwrap();
        let n = a.degree();
        let labels = subset_orbit_labels(n, &a.gens, 3, 10_000_000).unwrap();
        let mut by_orbit: alloc::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        let mut idx = 0;
        for c in 0..n {
            for b in 0..c {
                for x in 0..b {
                    let m = a.triple_mark(x, b, c);
                    let e = by_orbit.entry(labels[idx]).or_insert_with(|| m.clone());
                    assert_eq!(*e, m);
                    idx += 1;
                }
            }
        }
        assert!(triple_marks(&a, 1).len() >= 5);
    }

    #[test]
    fn mark_lower_bound_when_capped() {
        let a = build_action(&case("sp:d=4,q=3")).unwrap();
        let exact = rank3_stats(&a, 10_000_000, 0).unwrap();
        let capped = rank3_stats(&a, 100, 0).unwrap();
        assert_eq!(capped.method, Method::Marks);
        assert!(capped.f3 <= exact.f3);
    }
}
