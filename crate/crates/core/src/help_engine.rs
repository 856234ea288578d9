//! The HeLP constraint core.
//!
//! Partial augmentations of order-p torsion units on the two order-p
//! classes of PSL(2, p^3), the exact character value they force on eta,
//! the eigenvalue layout of the representing matrix, classical cyclic
//! Luthar-Passi multiplicities, and the non-cyclic restriction constraint
//! <eta|_H, psi> for an assignment of partial augmentations to the
//! classes of the candidate Heisenberg subgroup.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_odd_prime, rat, rat_frac, CycNum, Rational};
use crate::group_models::CharTable;
use crate::residue_f2::residue_sets;

/// Which Gaussian-sum branch the character value of a unit uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// (eps_g, eps_h) = (alpha + 1, -alpha); value uses the Q-sum.
    G,
    /// (eps_g, eps_h) = (-alpha, alpha + 1); value uses the N-sum.
    H,
}

impl Branch {
    pub fn flipped(self) -> Branch {
        match self {
            Branch::G => Branch::H,
            Branch::H => Branch::G,
        }
    }

    /// Branch after raising the unit to the k-th power, k coprime to p:
    /// residue exponents fix the branch, non-residues flip it.
    pub fn powered(self, legendre_of_k: i32) -> Branch {
        if legendre_of_k == -1 {
            self.flipped()
        } else {
            self
        }
    }
}

/// Partial augmentations of a candidate order-p unit on the classes g, h.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAVector {
    pub eps_g: i64,
    pub eps_h: i64,
    pub alpha: u32,
    pub branch: Branch,
}

impl PAVector {
    pub fn new(branch: Branch, alpha: u32) -> PAVector {
        let a = alpha as i64;
        match branch {
            Branch::G => PAVector { eps_g: a + 1, eps_h: -a, alpha, branch },
            Branch::H => PAVector { eps_g: -a, eps_h: a + 1, alpha, branch },
        }
    }

    /// eps_g + eps_h = 1 always; all other partial augmentations vanish.
    pub fn augmentation(&self) -> i64 {
        self.eps_g + self.eps_h
    }
}

/// Enumerates every admissible partial-augmentation vector: both branches,
/// alpha = 0 .. (p-1)/2. Larger alpha makes the all-roots block count
/// (p^2 - p)/2 - alpha p negative.
pub fn admissible_pa(p: u64) -> Result<Vec<PAVector>> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    let max_alpha = ((p - 1) / 2) as u32;
    let mut out = Vec::new();
    for branch in [Branch::G, Branch::H] {
        for alpha in 0..=max_alpha {
            out.push(PAVector::new(branch, alpha));
        }
    }
    Ok(out)
}

/// Exact character value eta(u) forced by a partial-augmentation vector:
/// (p + epsilon)/2 + alpha p + (2 alpha + 1) p * sum over the branch set.
///
/// Equals eps_g * eta(g) + eps_h * eta(h).
pub fn unit_char_value(p: u64, pa: &PAVector) -> Result<CycNum> {
    let rd = residue_sets(p)?;
    let e = rd.epsilon() as i64;
    let a = pa.alpha as i64;
    let set = match pa.branch {
        Branch::G => rd.residues(),
        Branch::H => rd.non_residues(),
    };
    let mut raw = vec![Rational::zero(); p as usize];
    raw[0] = rat_frac(p as i64 + e, 2) + rat(a * p as i64);
    let peak = rat((2 * a + 1) * p as i64);
    for &x in set {
        raw[x as usize] = peak.clone();
    }
    CycNum::reduce(p, &raw)
}

/// Multiset of eigenvalues of the representing matrix of the unit, as
/// multiplicities of zeta^0 .. zeta^{p-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigLayout {
    p: u64,
    mult: Vec<i64>,
}

impl EigLayout {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.mult
    }

    pub fn total(&self) -> i64 {
        self.mult.iter().sum()
    }

    /// sum_l mult[l] zeta^l, the trace of the represented unit.
    pub fn weighted_sum(&self) -> CycNum {
        let raw: Vec<Rational> = self.mult.iter().map(|&m| rat(m)).collect();
        CycNum::reduce(self.p, &raw).expect("valid prime")
    }

    /// Layout of the k-th power of the unit: zeta^l -> zeta^{kl}.
    pub fn power_map(&self, k: u64) -> EigLayout {
        let p = self.p;
        let mut mult = vec![0i64; p as usize];
        for (l, &m) in self.mult.iter().enumerate() {
            mult[((l as u64) * (k % p) % p) as usize] = m;
        }
        EigLayout { p, mult }
    }

    /// Minimal number of p-th roots of unity (with nonnegative integer
    /// multiplicities) summing to the same value, using the freedom of the
    /// vanishing all-roots sum.
    pub fn minimal_root_count(&self) -> i64 {
        let min = *self.mult.iter().min().expect("nonempty");
        self.mult.iter().map(|&m| m - min).sum()
    }
}

/// Eigenvalue layout of D(u) for an admissible partial-augmentation vector:
/// (p + epsilon)/2 + alpha p extra ones, a (2 alpha + 1) p peak on every
/// branch exponent, and (p^2 - p)/2 - alpha p full all-roots blocks.
pub fn eigenvalue_layout(p: u64, pa: &PAVector) -> Result<EigLayout> {
    let rd = residue_sets(p)?;
    let e = rd.epsilon() as i64;
    let a = pa.alpha as i64;
    let p64 = p as i64;
    let full_blocks = (p64 * p64 - p64) / 2 - a * p64;
    let mut mult = vec![full_blocks; p as usize];
    mult[0] += (p64 + e) / 2 + a * p64;
    let set = match pa.branch {
        Branch::G => rd.residues(),
        Branch::H => rd.non_residues(),
    };
    for &x in set {
        mult[x as usize] += (2 * a + 1) * p64;
    }
    if let Some(&bad) = mult.iter().find(|&&m| m < 0) {
        return Err(Error::Inadmissible(format!(
            "negative eigenvalue multiplicity {bad} at p = {p}, alpha = {a}"
        )));
    }
    Ok(EigLayout { p, mult })
}

/// Classical cyclic Luthar-Passi multiplicity of the eigenvalue zeta_n^l:
/// mu_l = (1/n) sum_{d | n} Tr(chi(u^d) zeta_n^{-dl}).
///
/// `char_on_powers` maps each divisor d of n to chi(u^d). Only odd prime
/// orders n are supported; the underlying field is Q(zeta_n), so chi(u^n)
/// = chi(1) must be rational.
pub fn lp_multiplicity(
    n: u64,
    char_on_powers: &BTreeMap<u64, CycNum>,
    l: u64,
) -> Result<Rational> {
    if !is_odd_prime(n) {
        return Err(Error::InvalidParameter(format!(
            "unit order {n} is not an odd prime"
        )));
    }
    let chi_u = char_on_powers
        .get(&1)
        .ok_or_else(|| Error::IncompleteInput("missing chi(u^1)".into()))?;
    let chi_one = char_on_powers
        .get(&n)
        .ok_or_else(|| Error::IncompleteInput(format!("missing chi(u^{n})")))?;
    if chi_u.prime() != n {
        return Err(Error::IncompatibleField(chi_u.prime(), n));
    }
    let deg = chi_one.to_rational().ok_or_else(|| {
        Error::NotRational("chi(1) must be rational".into())
    })?;
    let twisted = chi_u.mul_root(-(l as i64 % n as i64));
    let mu = (deg + twisted.rational_trace()) / rat(n as i64);
    Ok(mu)
}

/// A rational is a HeLP-admissible multiplicity iff it is a nonnegative
/// integer.
pub fn is_nonnegative_integer(x: &Rational) -> bool {
    x.denom().is_one() && !x.is_negative()
}

/// Partial-augmentation assignment on the conjugacy classes of H.
/// The identity class carries no vector (eta takes its degree there).
#[derive(Clone, Debug)]
pub struct ClassAssignment {
    pa_by_class: Vec<Option<PAVector>>,
}

impl ClassAssignment {
    pub fn new(pa_by_class: Vec<Option<PAVector>>) -> ClassAssignment {
        ClassAssignment { pa_by_class }
    }

    pub fn get(&self, class: usize) -> Option<&PAVector> {
        self.pa_by_class.get(class).and_then(|o| o.as_ref())
    }

    pub fn len(&self) -> usize {
        self.pa_by_class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pa_by_class.is_empty()
    }
}

/// The restricted character eta|_H as a dense class function: the degree
/// (p^3 + epsilon)/2 on the identity, the forced value of the assigned
/// partial augmentations elsewhere.
pub fn restricted_eta(
    p: u64,
    epsilon: i32,
    assignment: &ClassAssignment,
) -> Result<Vec<CycNum>> {
    let mut values = Vec::with_capacity(assignment.len());
    for class in 0..assignment.len() {
        if class == 0 {
            values.push(CycNum::from_rational(
                p,
                rat_frac((p * p * p) as i64 + epsilon as i64, 2),
            )?);
        } else {
            let pa = assignment.get(class).ok_or_else(|| {
                Error::IncompleteInput(format!("class {class} has no assignment"))
            })?;
            values.push(unit_char_value(p, pa)?);
        }
    }
    Ok(values)
}

/// The non-cyclic HeLP constraint value <eta|_H, psi>_H for one character
/// row of H, computed exactly. The caller checks membership in Z_{>= 0}.
pub fn restriction_constraint(
    table: &CharTable,
    epsilon: i32,
    assignment: &ClassAssignment,
    psi: &[CycNum],
) -> Result<Rational> {
    if assignment.len() != table.class_count() {
        return Err(Error::IncompleteInput(format!(
            "assignment covers {} classes, table has {}",
            assignment.len(),
            table.class_count()
        )));
    }
    let eta = restricted_eta(table.p(), epsilon, assignment)?;
    let ip = table.inner_product(&eta, psi)?;
    ip.to_rational().ok_or_else(|| {
        Error::NotRational(format!("<eta, psi> = {ip} is not rational"))
    })
}
