//! Quadratic gadgets for a single cubic term.
//!
//! A gadget acts on four roles: the three spins `A`, `B`, `C` of the cubic
//! term and one auxiliary spin. It is exact for target `d` when, for all eight
//! assignments of `(A, B, C)`,
//!
//! `min_aux Q(A, B, C, aux) = d·A·B·C + offset`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const ROLE_A: usize = 0;
pub const ROLE_B: usize = 1;
pub const ROLE_C: usize = 2;
pub const ROLE_AUX: usize = 3;

/// Role pairs in the order used by [`GadgetSpec::quadratic`].
pub const ROLE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub const DEFAULT_COEFF_BOUND: f64 = 4.0;

const ASSIGNMENTS: [[i8; 3]; 8] = [
    [-1, -1, -1],
    [-1, -1, 1],
    [-1, 1, -1],
    [-1, 1, 1],
    [1, -1, -1],
    [1, -1, 1],
    [1, 1, -1],
    [1, 1, 1],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadgetSpec<T> {
    /// Cubic coefficient the gadget reproduces.
    pub target_coeff: T,
    /// Fields on roles A, B, C, aux.
    pub linear: [T; 4],
    /// Couplings in [`ROLE_PAIRS`] order.
    pub quadratic: [T; 6],
    pub offset: T,
}

/// Outcome of [`verify_gadget`]. `witness` is the first `(A, B, C)`
/// assignment violating exactness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetCheck {
    pub exact: bool,
    pub witness: Option<[i8; 3]>,
}

impl<T: Scalar> GadgetSpec<T> {
    /// Quadratic-form energy (offset excluded) of a role assignment.
    pub fn form_energy(&self, s: [i8; 4]) -> T {
        let mut e = T::zero();
        for (r, &h) in self.linear.iter().enumerate() {
            e += h.signed(s[r]);
        }
        for (&(a, b), &j) in ROLE_PAIRS.iter().zip(&self.quadratic) {
            e += j.signed(s[a] * s[b]);
        }
        e
    }

    /// `min_aux` of the form energy.
    pub fn min_over_aux(&self, abc: [i8; 3]) -> T {
        let lo = self.form_energy([abc[0], abc[1], abc[2], -1]);
        let hi = self.form_energy([abc[0], abc[1], abc[2], 1]);
        lo.min(hi)
    }

    /// Aux value attaining [`min_over_aux`](Self::min_over_aux); ties go to -1.
    pub fn best_aux(&self, abc: [i8; 3]) -> i8 {
        let lo = self.form_energy([abc[0], abc[1], abc[2], -1]);
        let hi = self.form_energy([abc[0], abc[1], abc[2], 1]);
        if hi < lo {
            1
        } else {
            -1
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = T> + '_ {
        self.linear.iter().chain(self.quadratic.iter()).copied()
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coefficients().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    pub fn num_nonzero(&self) -> usize {
        self.coefficients().filter(|c| *c != T::zero()).count()
    }

    /// Every coefficient, the target and the offset multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        GadgetSpec {
            target_coeff: self.target_coeff * factor,
            linear: self.linear.map(|c| c * factor),
            quadratic: self.quadratic.map(|c| c * factor),
            offset: self.offset * factor,
        }
    }

    /// Spin-reversal of one role: negates every coefficient involving it.
    /// Reversing A, B or C also negates the target.
    pub fn with_role_flipped(&self, role: usize) -> Self {
        assert!(role < 4, "gadget roles are 0..4");
        let mut out = *self;
        out.linear[role] = -out.linear[role];
        for (k, &(a, b)) in ROLE_PAIRS.iter().enumerate() {
            if a == role || b == role {
                out.quadratic[k] = -out.quadratic[k];
            }
        }
        if role != ROLE_AUX {
            out.target_coeff = -out.target_coeff;
        }
        out
    }

    pub fn cast<U: Scalar>(&self) -> GadgetSpec<U> {
        let c = |v: T| U::lit(v.to_f64_lossy());
        GadgetSpec {
            target_coeff: c(self.target_coeff),
            linear: self.linear.map(c),
            quadratic: self.quadratic.map(c),
            offset: c(self.offset),
        }
    }
}

/// Checks exactness over all 16 role assignments.
pub fn verify_gadget<T: Scalar>(g: &GadgetSpec<T>) -> GadgetCheck {
    let scale = T::one() + g.max_abs_coeff() + g.target_coeff.abs() + g.offset.abs();
    let tol = T::epsilon() * T::lit(64.0) * scale;
    for abc in ASSIGNMENTS {
        let want = g.target_coeff.signed(abc[0] * abc[1] * abc[2]) + g.offset;
        if (g.min_over_aux(abc) - want).abs() > tol {
            return GadgetCheck {
                exact: false,
                witness: Some(abc),
            };
        }
    }
    GadgetCheck {
        exact: true,
        witness: None,
    }
}

/// Finds an exact gadget for target `d ∈ {-1, +1}` on the half-integer grid
/// within `[-coeff_bound, coeff_bound]`.
///
/// Minimizing over aux gives `P(A,B,C) - |g(A,B,C)|` where `g` collects the
/// aux field and the three aux couplings and `P` the remaining terms. `P`
/// spans exactly the degree-1 and degree-2 parity functions on `(A,B,C)`, so
/// exactness forces `P` to be the degree-1/2 Fourier part of `|g|` and
/// requires the `ABC` Fourier coefficient of `|g|` to equal `-d`. Enumerating
/// the four aux coefficients therefore enumerates every exact gadget on the
/// grid. The result minimizes the largest coefficient magnitude, then the
/// number of nonzero coefficients, then the coefficient vector
/// `(h_A, h_B, h_C, h_aux, J_AB, J_AC, J_A·aux, J_BC, J_B·aux, J_C·aux)`
/// lexicographically.
pub fn synthesize_gadget<T: Scalar>(d: T, coeff_bound: T) -> Result<GadgetSpec<T>> {
    let sign: i64 = if d == T::one() {
        1
    } else if d == -T::one() {
        -1
    } else {
        return Err(Error::InvalidParameter(format!(
            "gadget target must be ±1, got {d}"
        )));
    };
    if !(coeff_bound >= T::one()) {
        return Err(Error::InvalidParameter(format!(
            "coefficient bound must be at least 1, got {coeff_bound}"
        )));
    }
    // Work in half units: stored integer k means coefficient k/2.
    let max_half = (coeff_bound.to_f64_lossy() * 2.0).floor() as i64;

    for level in 1..=max_half {
        let mut best: Option<(usize, [i64; 10], i64)> = None;
        for lx in -level..=level {
            for ja in -level..=level {
                for jb in -level..=level {
                    for jc in -level..=level {
                        let Some((p, abs_sum)) = fourier_part(lx, ja, jb, jc, sign) else {
                            continue;
                        };
                        if p.iter().any(|c| c.abs() > level) {
                            continue;
                        }
                        // [hA, hB, hC, h_aux, J_AB, J_AC, J_Aaux, J_BC, J_Baux, J_Caux]
                        let vec = [p[0], p[1], p[2], lx, p[3], p[4], ja, p[5], jb, jc];
                        let nnz = vec.iter().filter(|&&c| c != 0).count();
                        let better = match &best {
                            None => true,
                            Some((bn, bv, _)) => (nnz, vec) < (*bn, *bv),
                        };
                        if better {
                            best = Some((nnz, vec, abs_sum));
                        }
                    }
                }
            }
        }
        if let Some((_, v, abs_sum)) = best {
            let half = |k: i64| T::lit(k as f64 / 2.0);
            return Ok(GadgetSpec {
                target_coeff: d,
                linear: [half(v[0]), half(v[1]), half(v[2]), half(v[3])],
                quadratic: [
                    half(v[4]),
                    half(v[5]),
                    half(v[6]),
                    half(v[7]),
                    half(v[8]),
                    half(v[9]),
                ],
                // offset = -(mean of |g|) in real units; |g| is in half units.
                offset: T::lit(-(abs_sum as f64) / 16.0),
            });
        }
    }
    Err(Error::SynthesisFailed {
        target: d.to_f64_lossy(),
        bound: coeff_bound.to_f64_lossy(),
    })
}

/// For aux coefficients in half units, returns the determined
/// `[hA, hB, hC, J_AB, J_AC, J_BC]` (half units) and `Σ|g|` when they are
/// integral and the cubic Fourier coefficient matches `-d`.
fn fourier_part(lx: i64, ja: i64, jb: i64, jc: i64, d: i64) -> Option<([i64; 6], i64)> {
    let mut sums = [0i64; 8]; // 1, a, b, c, ab, ac, bc, abc
    for [a, b, c] in ASSIGNMENTS {
        let (a, b, c) = (a as i64, b as i64, c as i64);
        let g = (lx + ja * a + jb * b + jc * c).abs();
        let chi = [1, a, b, c, a * b, a * c, b * c, a * b * c];
        for (s, x) in sums.iter_mut().zip(chi) {
            *s += g * x;
        }
    }
    // ABC coefficient of |g| (real units) is sums[7] / 16; it must equal -d.
    if sums[7] != -16 * d {
        return None;
    }
    // Degree-1/2 coefficients in half units: sums / 8.
    let mut p = [0i64; 6];
    for (k, s) in sums[1..7].iter().enumerate() {
        if s % 8 != 0 {
            return None;
        }
        p[k] = s / 8;
    }
    Some((p, sums[0]))
}

/// Gadgets keyed by the sign of the cubic coefficient they handle.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetSet<T> {
    pub name: String,
    pub positive: Option<GadgetSpec<T>>,
    pub negative: Option<GadgetSpec<T>>,
}

impl<T: Scalar> GadgetSet<T> {
    pub fn new(name: impl Into<String>) -> Self {
        GadgetSet {
            name: name.into(),
            positive: None,
            negative: None,
        }
    }

    /// Independently synthesized gadgets for both signs.
    pub fn baseline() -> Result<Self> {
        let bound = T::lit(DEFAULT_COEFF_BOUND);
        Ok(GadgetSet {
            name: "baseline".into(),
            positive: Some(synthesize_gadget(T::one(), bound)?),
            negative: Some(synthesize_gadget(-T::one(), bound)?),
        })
    }

    /// Files `g` under the sign of its target, replacing any previous one.
    pub fn insert(&mut self, g: GadgetSpec<T>) -> Result<()> {
        if g.target_coeff > T::zero() {
            self.positive = Some(g);
        } else if g.target_coeff < T::zero() {
            self.negative = Some(g);
        } else {
            return Err(Error::InvalidParameter(
                "gadget target must be nonzero".into(),
            ));
        }
        Ok(())
    }

    pub fn for_sign(&self, sign: i8) -> Option<&GadgetSpec<T>> {
        if sign > 0 {
            self.positive.as_ref()
        } else {
            self.negative.as_ref()
        }
    }

    /// Gadget reproducing cubic coefficient `k`, scaled from the unit gadget
    /// of the matching sign by `|k| / |target|`.
    pub fn gadget_for(&self, k: T) -> Result<GadgetSpec<T>> {
        let sign = if k > T::zero() { 1 } else { -1 };
        let g = self.for_sign(sign).ok_or(Error::MissingGadget { sign })?;
        Ok(g.scaled(k.abs() / g.target_coeff.abs()))
    }

    pub fn gadgets(&self) -> impl Iterator<Item = &GadgetSpec<T>> {
        self.positive.iter().chain(self.negative.iter())
    }
}

/// Replaces the `d = -1` gadget by the `d = +1` gadget with role C reversed.
pub fn better_gadget_set<T: Scalar>(base: &GadgetSet<T>) -> Result<GadgetSet<T>> {
    let plus = base.positive.ok_or(Error::MissingGadget { sign: 1 })?;
    Ok(GadgetSet {
        name: "better".into(),
        positive: Some(plus),
        negative: Some(plus.with_role_flipped(ROLE_C)),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GadgetEntry {
    target_coeff: f64,
    offset: f64,
    #[serde(default)]
    linear: Vec<(usize, f64)>,
    #[serde(default)]
    quadratic: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GadgetLibraryFile {
    format_version: u32,
    kind: String,
    name: String,
    gadgets: Vec<GadgetEntry>,
}

const LIBRARY_KIND: &str = "gadget_library";

/// Serializes a gadget set; roles A, B, C, aux are indices 0-3.
pub fn gadget_library_to_string<T: Scalar>(set: &GadgetSet<T>) -> String {
    let f = |v: T| v.to_f64_lossy();
    let file = GadgetLibraryFile {
        format_version: crate::FORMAT_VERSION,
        kind: LIBRARY_KIND.into(),
        name: set.name.clone(),
        gadgets: set
            .gadgets()
            .map(|g| GadgetEntry {
                target_coeff: f(g.target_coeff),
                offset: f(g.offset),
                linear: (0..4)
                    .filter(|&r| g.linear[r] != T::zero())
                    .map(|r| (r, f(g.linear[r])))
                    .collect(),
                quadratic: ROLE_PAIRS
                    .iter()
                    .zip(&g.quadratic)
                    .filter(|(_, &c)| c != T::zero())
                    .map(|(&(a, b), &c)| (a, b, f(c)))
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("gadget library serializes");
    s.push('\n');
    s
}

pub fn gadget_library_from_str<T: Scalar>(text: &str, origin: &str) -> Result<GadgetSet<T>> {
    let file: GadgetLibraryFile =
        serde_json::from_str(text).map_err(|e| Error::parse(origin, e.to_string()))?;
    if file.kind != LIBRARY_KIND {
        return Err(Error::parse(
            origin,
            format!("kind must be '{LIBRARY_KIND}', got '{}'", file.kind),
        ));
    }
    let mut set = GadgetSet::new(file.name);
    for (pos, entry) in file.gadgets.iter().enumerate() {
        let at = |msg: String| Error::parse(format!("{origin}: gadgets[{pos}]"), msg);
        let mut g = GadgetSpec {
            target_coeff: T::lit(entry.target_coeff),
            linear: [T::zero(); 4],
            quadratic: [T::zero(); 6],
            offset: T::lit(entry.offset),
        };
        let mut seen = [false; 4];
        for &(r, c) in &entry.linear {
            if r >= 4 || std::mem::replace(&mut seen[r], true) {
                return Err(at(format!("bad or repeated linear role {r}")));
            }
            g.linear[r] = T::lit(c);
        }
        let mut seen = [false; 6];
        for &(a, b, c) in &entry.quadratic {
            let key = (a.min(b), a.max(b));
            let k = ROLE_PAIRS
                .iter()
                .position(|&p| p == key)
                .ok_or_else(|| at(format!("bad role pair ({a}, {b})")))?;
            if std::mem::replace(&mut seen[k], true) {
                return Err(at(format!("duplicate role pair ({a}, {b})")));
            }
            g.quadratic[k] = T::lit(c);
        }
        set.insert(g).map_err(|e| at(e.to_string()))?;
    }
    Ok(set)
}
