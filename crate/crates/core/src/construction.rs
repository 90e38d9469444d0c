//! The two-system construction.
//!
//! The first system Γ cuts out `Z_Γ`, whose quotient by `T_Γ` is the toric
//! manifold `V` of real dimension `2n`. The second system Δ selects the real
//! stratum `S = (R_Γ ∩ R_Δ)/D_Γ` of dimension `n + ℓ − m`, and spreading `S`
//! by `T_Δ` gives the `n`-dimensional Lagrangian `N = S ×_{D_Δ} T_Δ ⊂ V`.
//!
//! Γ, Δ and their stack must each satisfy conditions (a)–(c) and have Delzant
//! associated polyhedra.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::delzant::{check_delzant, DelzantVerdict};
use crate::gale::{build_polyhedron, gale_dual};
use crate::quadrics::{stack, validate, Condition, QuadricError, QuadricSystem, ValidationVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Gamma,
    Delta,
    Stacked,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Gamma => "gamma",
            Role::Delta => "delta",
            Role::Stacked => "stacked",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FailedCheck {
    Condition(Condition),
    Delzant,
    /// `n + ℓ < m`, so the real stratum would have negative dimension.
    NegativeDimS,
}

impl fmt::Display for FailedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailedCheck::Condition(c) => write!(f, "{c}"),
            FailedCheck::Delzant => f.write_str("Delzant"),
            FailedCheck::NegativeDimS => f.write_str("dim S < 0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstructionFailure {
    pub system: Role,
    pub check: FailedCheck,
}

impl fmt::Display for ConstructionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.system, self.check)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemVerdict {
    pub validation: ValidationVerdict,
    /// Present when the system validated.
    pub delzant: Option<DelzantVerdict>,
    pub is_bounded: Option<bool>,
}

impl SystemVerdict {
    pub fn passes(&self) -> bool {
        self.validation.all_pass() && self.delzant.as_ref().is_some_and(|d| d.is_delzant)
    }
}

/// Real dimensions of every manifold in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimensions {
    pub z_gamma: usize,
    pub v: usize,
    pub s: usize,
    pub n: usize,
    pub v_hat: usize,
    pub n_hat: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusData {
    pub t_gamma_rank: usize,
    pub t_delta_rank: usize,
    pub d_gamma_order: BigUint,
    pub d_delta_order: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// Γ empty: `V = C^m`.
    AmbientCm,
    /// Δ empty: `N` is the real locus of `V`.
    RealPoints,
    /// Γ a single quadric with equal positive coefficients: `V = CP^{m−1}`.
    Projective,
    General,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::AmbientCm => "ambient_Cm",
            SpecialCase::RealPoints => "real_points",
            SpecialCase::Projective => "projective",
            SpecialCase::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub m: usize,
    pub n: usize,
    pub ell: usize,
    pub gamma: SystemVerdict,
    pub delta: SystemVerdict,
    /// Absent when the stack could not be formed (`n + ℓ < m`).
    pub stacked: Option<SystemVerdict>,
    pub dims: Option<Dimensions>,
    pub torus: TorusData,
    pub special_case: SpecialCase,
    pub failures: Vec<ConstructionFailure>,
}

impl ConstructionReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self, role: Role) -> Option<&SystemVerdict> {
        match role {
            Role::Gamma => Some(&self.gamma),
            Role::Delta => Some(&self.delta),
            Role::Stacked => self.stacked.as_ref(),
        }
    }
}

pub fn classify(gamma: &QuadricSystem, delta: &QuadricSystem) -> SpecialCase {
    if gamma.is_empty() {
        return SpecialCase::AmbientCm;
    }
    if delta.is_empty() {
        return SpecialCase::RealPoints;
    }
    if gamma.num_quadrics() == 1 {
        let row = gamma.coeffs().row(0);
        let t = &row[0];
        if t > &Zero::zero() && row.iter().all(|c| c == t) {
            return SpecialCase::Projective;
        }
    }
    SpecialCase::General
}

/// Validation plus the Delzant test of the associated polyhedron.
pub fn assess(sys: &QuadricSystem) -> SystemVerdict {
    let validation = validate(sys);
    if !validation.all_pass() {
        return SystemVerdict { validation, delzant: None, is_bounded: None };
    }
    let p = build_polyhedron(&gale_dual(sys).expect("validated system has a Gale dual"));
    SystemVerdict { validation, delzant: Some(check_delzant(&p)), is_bounded: Some(p.is_bounded) }
}

fn collect_failures(role: Role, v: &SystemVerdict, out: &mut Vec<ConstructionFailure>) {
    for c in v.validation.failed_conditions() {
        out.push(ConstructionFailure { system: role, check: FailedCheck::Condition(c) });
    }
    if v.delzant.as_ref().is_some_and(|d| !d.is_delzant) {
        out.push(ConstructionFailure { system: role, check: FailedCheck::Delzant });
    }
}

pub fn build_construction(
    gamma: &QuadricSystem,
    delta: &QuadricSystem,
) -> Result<ConstructionReport, QuadricError> {
    if gamma.m() != delta.m() {
        return Err(QuadricError::DimensionMismatch { left: gamma.m(), right: delta.m() });
    }
    let m = gamma.m();
    let n = gamma.n();
    let ell = delta.n();
    let torus = TorusData {
        t_gamma_rank: m - n,
        t_delta_rank: m - ell,
        d_gamma_order: BigUint::one() << (m - n),
        d_delta_order: BigUint::one() << (m - ell),
    };

    let gamma_v = assess(gamma);
    let delta_v = assess(delta);
    let mut failures = Vec::new();
    collect_failures(Role::Gamma, &gamma_v, &mut failures);
    collect_failures(Role::Delta, &delta_v, &mut failures);

    let stacked_v = if n + ell < m {
        failures.push(ConstructionFailure { system: Role::Stacked, check: FailedCheck::NegativeDimS });
        None
    } else {
        let s = stack(gamma, delta).expect("n + ℓ ≥ m keeps the stack within C^m");
        let v = assess(&s);
        collect_failures(Role::Stacked, &v, &mut failures);
        Some(v)
    };

    let dims = failures.is_empty().then(|| {
        let s = n + ell - m;
        Dimensions { z_gamma: m + n, v: 2 * n, s, n, v_hat: 2 * s, n_hat: s }
    });

    Ok(ConstructionReport {
        m,
        n,
        ell,
        gamma: gamma_v,
        delta: delta_v,
        stacked: stacked_v,
        dims,
        torus,
        special_case: classify(gamma, delta),
        failures,
    })
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn verdict_line(role: Role, v: Option<&SystemVerdict>) -> String {
    let Some(v) = v else {
        return format!("{role}: not formed");
    };
    let val = &v.validation;
    let mut line = format!(
        "{role}: (a) {}, (b) {}, (c) {}",
        pass_fail(val.cond_a.pass),
        pass_fail(val.cond_b.pass),
        pass_fail(val.cond_c.pass)
    );
    match &v.delzant {
        Some(d) => {
            let _ = write!(line, ", Delzant {}", pass_fail(d.is_delzant));
            if let Some(b) = v.is_bounded {
                line.push_str(if b { ", bounded" } else { ", unbounded" });
            }
        }
        None => line.push_str(", Delzant not checked"),
    }
    line
}

/// Human-readable summary of a report.
pub fn report_text(rep: &ConstructionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "m = {}, n = {}, ell = {}", rep.m, rep.n, rep.ell);
    for role in [Role::Gamma, Role::Delta, Role::Stacked] {
        let _ = writeln!(out, "{}", verdict_line(role, rep.verdict(role)));
    }
    let special = match rep.special_case {
        SpecialCase::AmbientCm => format!("ambient_Cm (V = C^{})", rep.m),
        SpecialCase::RealPoints => "real_points (N is the real locus of V)".to_string(),
        SpecialCase::Projective => {
            format!("projective (V = CP^{})", rep.m.saturating_sub(1))
        }
        SpecialCase::General => "general".to_string(),
    };
    let _ = writeln!(out, "special case: {special}");
    let t = &rep.torus;
    let _ = writeln!(
        out,
        "T_gamma rank m - n = {}, T_delta rank m - ell = {}, |D_gamma| = 2^{} = {}, |D_delta| = 2^{} = {}",
        t.t_gamma_rank,
        t.t_delta_rank,
        t.t_gamma_rank,
        t.d_gamma_order,
        t.t_delta_rank,
        t.d_delta_order
    );
    match &rep.dims {
        Some(d) => {
            let (m, n, l) = (rep.m, rep.n, rep.ell);
            let _ = writeln!(out, "dim Z_gamma = m + n = {m} + {n} = {}", d.z_gamma);
            let _ = writeln!(out, "dim V = 2n = {}", d.v);
            let _ = writeln!(out, "dim S = n + ell - m = {n} + {l} - {m} = {}", d.s);
            let _ = writeln!(out, "dim N = n = {}", d.n);
            let _ = writeln!(out, "dim V_hat = 2(n + ell - m) = {}", d.v_hat);
            let _ = writeln!(out, "dim N_hat = n + ell - m = {}", d.n_hat);
            let _ = writeln!(out, "result: valid");
        }
        None => {
            for f in &rep.failures {
                let _ = writeln!(out, "failure: {} system fails {}", f.system, f.check);
            }
            let _ = writeln!(out, "result: rejected");
        }
    }
    out
}
