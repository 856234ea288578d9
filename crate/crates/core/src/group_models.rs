//! Concrete models of the finite groups in play.
//!
//! The Heisenberg group of order p^3 (extraspecial of exponent p) is modeled
//! by exponent triples z^r b^s c^t with the twisted multiplication law coming
//! from the defining relation c^{-1} b c = z b. The character table of H, the
//! two-character fragment of the table of PSL(2, p^3), class-function inner
//! products, and the Dickson Sylow-shape dispatcher live here too.


use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{is_odd_prime, rat, rat_frac, CycNum, Rational};
use crate::residue_f2::{gauss_sum, residue_sets};

/// Element z^zexp b^bexp c^cexp of the Heisenberg group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisenbergElement {
    pub zexp: u32,
    pub bexp: u32,
    pub cexp: u32,
}

impl HeisenbergElement {
    pub fn identity() -> HeisenbergElement {
        HeisenbergElement { zexp: 0, bexp: 0, cexp: 0 }
    }

    pub fn new(p: u64, zexp: i64, bexp: i64, cexp: i64) -> HeisenbergElement {
        let p = p as i64;
        HeisenbergElement {
            zexp: zexp.rem_euclid(p) as u32,
            bexp: bexp.rem_euclid(p) as u32,
            cexp: cexp.rem_euclid(p) as u32,
        }
    }

    pub fn is_central(&self) -> bool {
        self.bexp == 0 && self.cexp == 0
    }

    pub fn is_identity(&self) -> bool {
        self.zexp == 0 && self.bexp == 0 && self.cexp == 0
    }

    /// Product in normal form: moving c^t past b^{s'} costs z^{-t s'}.
    pub fn mul(&self, other: &HeisenbergElement, p: u64) -> HeisenbergElement {
        let p64 = p as i64;
        let twist = (self.cexp as i64) * (other.bexp as i64) % p64;
        HeisenbergElement::new(
            p,
            self.zexp as i64 + other.zexp as i64 - twist,
            self.bexp as i64 + other.bexp as i64,
            self.cexp as i64 + other.cexp as i64,
        )
    }

    pub fn inverse(&self, p: u64) -> HeisenbergElement {
        let (r, s, t) = (self.zexp as i64, self.bexp as i64, self.cexp as i64);
        HeisenbergElement::new(p, -r - t * s, -s, -t)
    }

    pub fn pow(&self, k: u64, p: u64) -> HeisenbergElement {
        let mut acc = HeisenbergElement::identity();
        for _ in 0..(k % p) {
            acc = acc.mul(self, p);
        }
        acc
    }

    pub fn conjugate_by(&self, g: &HeisenbergElement, p: u64) -> HeisenbergElement {
        g.inverse(p).mul(self, p).mul(g, p)
    }
}

/// One conjugacy class: representative plus full member list.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: HeisenbergElement,
    pub members: Vec<HeisenbergElement>,
}

/// The Heisenberg group of order p^3 with its class data.
#[derive(Clone, Debug)]
pub struct GroupModel {
    p: u64,
    elements: Vec<HeisenbergElement>,
    classes: Vec<ConjClass>,
    center: Vec<HeisenbergElement>,
}

/// Class indexing shared by the group model and the character table:
/// 0 is the identity, 1..p are z^1..z^{p-1}, and the noncentral class of
/// b^s c^t (s, t) != (0, 0) sits at p + s*p + t - 1.
pub fn class_index(p: u64, e: &HeisenbergElement) -> usize {
    if e.is_central() {
        e.zexp as usize
    } else {
        (p + e.bexp as u64 * p + e.cexp as u64 - 1) as usize
    }
}

/// Number of conjugacy classes, p^2 + p - 1.
pub fn class_count(p: u64) -> usize {
    (p * p + p - 1) as usize
}

impl GroupModel {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.p * self.p * self.p
    }

    pub fn elements(&self) -> &[HeisenbergElement] {
        &self.elements
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn center(&self) -> &[HeisenbergElement] {
        &self.center
    }

    pub fn class_index(&self, e: &HeisenbergElement) -> usize {
        class_index(self.p, e)
    }

    pub fn class_size(&self, idx: usize) -> u64 {
        self.classes[idx].members.len() as u64
    }

    /// Index of the class containing the inverses of class `idx`.
    pub fn inverse_class(&self, idx: usize) -> usize {
        self.class_index(&self.classes[idx].rep.inverse(self.p))
    }
}

/// Builds the Heisenberg group of order p^3.
///
/// Conjugacy classes are computed structurally: the class of a noncentral
/// element w is the coset w Z(H), since [w, H] = Z(H) for extraspecial H.
pub fn heisenberg(p: u64) -> Result<GroupModel> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidParameter(format!(
            "Heisenberg model requires an odd prime, got {p}"
        )));
    }
    let mut elements = Vec::with_capacity((p * p * p) as usize);
    for r in 0..p {
        for s in 0..p {
            for t in 0..p {
                elements.push(HeisenbergElement::new(p, r as i64, s as i64, t as i64));
            }
        }
    }
    let center: Vec<HeisenbergElement> =
        (0..p).map(|r| HeisenbergElement::new(p, r as i64, 0, 0)).collect();

    let mut classes = Vec::with_capacity(class_count(p));
    for r in 0..p {
        let e = HeisenbergElement::new(p, r as i64, 0, 0);
        classes.push(ConjClass { rep: e, members: vec![e] });
    }
    for s in 0..p {
        for t in 0..p {
            if s == 0 && t == 0 {
                continue;
            }
            let rep = HeisenbergElement::new(p, 0, s as i64, t as i64);
            let members = (0..p)
                .map(|r| HeisenbergElement::new(p, r as i64, s as i64, t as i64))
                .collect();
            classes.push(ConjClass { rep, members });
        }
    }
    debug_assert_eq!(classes.len(), class_count(p));
    Ok(GroupModel { p, elements, classes, center })
}

/// Row of the character table of H.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSpec {
    /// Inflated from H/Z(H) = C_p x C_p: b -> zeta^s, c -> zeta^t.
    Linear { s: u64, t: u64 },
    /// Degree-p character vanishing off the center, psi_j(z^k) = p zeta^{jk}.
    Nonlinear { j: u64 },
}

/// Character table of the Heisenberg group.
///
/// Values are produced on demand from the row spec, so the table stays
/// O(p^2) in memory even though it has (p^2 + p - 1)^2 entries.
#[derive(Clone, Debug)]
pub struct CharTable {
    p: u64,
    class_reps: Vec<HeisenbergElement>,
    class_sizes: Vec<u64>,
    inv_class: Vec<usize>,
    rows: Vec<RowSpec>,
}

impl CharTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RowSpec] {
        &self.rows
    }

    pub fn class_reps(&self) -> &[HeisenbergElement] {
        &self.class_reps
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn inverse_class(&self, idx: usize) -> usize {
        self.inv_class[idx]
    }

    pub fn degree(&self, row: usize) -> u64 {
        match self.rows[row] {
            RowSpec::Linear { .. } => 1,
            RowSpec::Nonlinear { .. } => self.p,
        }
    }

    /// Row index of the linear character (s, t).
    pub fn linear_row(&self, s: u64, t: u64) -> usize {
        ((s % self.p) * self.p + t % self.p) as usize
    }

    /// Row index of the nonlinear character psi_j, 1 <= j <= p-1.
    pub fn nonlinear_row(&self, j: u64) -> usize {
        (self.p * self.p + (j - 1)) as usize
    }

    /// Character value as (coefficient, zeta exponent); None means zero.
    pub fn value_mono(&self, row: usize, class: usize) -> Option<(i64, u64)> {
        let rep = &self.class_reps[class];
        match self.rows[row] {
            RowSpec::Linear { s, t } => {
                let e = (s * rep.bexp as u64 + t * rep.cexp as u64) % self.p;
                Some((1, e))
            }
            RowSpec::Nonlinear { j } => {
                if rep.is_central() {
                    Some((self.p as i64, j * rep.zexp as u64 % self.p))
                } else {
                    None
                }
            }
        }
    }

    pub fn value(&self, row: usize, class: usize) -> CycNum {
        match self.value_mono(row, class) {
            None => CycNum::zero(self.p).expect("valid prime"),
            Some((c, e)) => CycNum::root_of_unity(self.p, e as i64)
                .expect("valid prime")
                .scale(&rat(c)),
        }
    }

    /// One full row as a dense class-function vector.
    pub fn row_values(&self, row: usize) -> Vec<CycNum> {
        (0..self.class_count()).map(|k| self.value(row, k)).collect()
    }

    /// Exact inner product (1/|H|) sum_k |k| f(k) g(inv k) of two class
    /// functions given as dense vectors indexed by class.
    pub fn inner_product(&self, f: &[CycNum], g: &[CycNum]) -> Result<CycNum> {
        if f.len() != self.class_count() || g.len() != self.class_count() {
            return Err(Error::InvalidParameter(format!(
                "class function length {} / {} does not match class count {}",
                f.len(),
                g.len(),
                self.class_count()
            )));
        }
        let mut acc = CycNum::zero(self.p)?;
        for k in 0..self.class_count() {
            let term = f[k].try_mul(&g[self.inv_class[k]])?;
            acc = acc.try_add(&term.scale(&rat(self.class_sizes[k] as i64)))?;
        }
        let order = rat((self.p * self.p * self.p) as i64);
        Ok(acc.scale(&order.recip()))
    }

    /// Integer-histogram inner product of two rows, exact and allocation-light.
    ///
    /// Returns the length-p raw exponent vector of |H| * <row1, row2>.
    fn mono_inner_raw(&self, row1: usize, row2: usize) -> Vec<i128> {
        let p = self.p as usize;
        let mut raw = vec![0i128; p];
        for k in 0..self.class_count() {
            let Some((c1, e1)) = self.value_mono(row1, k) else { continue };
            let Some((c2, e2)) = self.value_mono(row2, self.inv_class[k]) else { continue };
            let e = (e1 + e2) % self.p;
            raw[e as usize] += c1 as i128 * c2 as i128 * self.class_sizes[k] as i128;
        }
        raw
    }

    /// Checks that a raw length-p exponent vector represents the rational
    /// integer `expected` (under the vanishing-sum relation).
    fn raw_is_integer(raw: &[i128], expected: i128) -> bool {
        let last = raw[raw.len() - 1];
        if raw[0] - last != expected {
            return false;
        }
        raw[1..].iter().all(|&v| v == last)
    }

    /// First (row) orthogonality for every pair of rows, exactly.
    pub fn verify_row_orthogonality(&self) -> Result<()> {
        let order = (self.p * self.p * self.p) as i128;
        if self.class_count() <= 250 {
            for i in 0..self.row_count() {
                for j in i..self.row_count() {
                    let raw = self.mono_inner_raw(i, j);
                    let expected = if i == j { order } else { 0 };
                    if !Self::raw_is_integer(&raw, expected) {
                        return Err(Error::IdentityViolation(format!(
                            "row orthogonality fails for rows {i}, {j}"
                        )));
                    }
                }
            }
            return Ok(());
        }
        self.verify_row_orthogonality_structured()
    }

    /// Row orthogonality for large p: linear x linear pairs depend only on
    /// the index difference, so p^2 difference checks cover all p^4 pairs.
    fn verify_row_orthogonality_structured(&self) -> Result<()> {
        let p = self.p;
        let order = (p * p * p) as i128;
        for ds in 0..p {
            for dt in 0..p {
                let mut raw = vec![0i128; p as usize];
                for k in 0..self.class_count() {
                    let rep = &self.class_reps[k];
                    let e = (ds * rep.bexp as u64 + dt * rep.cexp as u64) % p;
                    raw[e as usize] += self.class_sizes[k] as i128;
                }
                let expected = if ds == 0 && dt == 0 { order } else { 0 };
                if !Self::raw_is_integer(&raw, expected) {
                    return Err(Error::IdentityViolation(format!(
                        "linear row orthogonality fails at difference ({ds}, {dt})"
                    )));
                }
            }
        }
        // Pairs involving a nonlinear row: only p-1 such rows.
        for j in 1..p {
            let nj = self.nonlinear_row(j);
            for other in 0..self.row_count() {
                let raw = self.mono_inner_raw(nj, other);
                let expected = if nj == other { order } else { 0 };
                if !Self::raw_is_integer(&raw, expected) {
                    return Err(Error::IdentityViolation(format!(
                        "orthogonality fails for nonlinear row {j} vs row {other}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Second (column) orthogonality for every pair of columns, exactly.
    pub fn verify_column_orthogonality(&self) -> Result<()> {
        let p = self.p;
        let order = (p * p * p) as i128;
        if self.class_count() > 250 {
            return self.verify_column_orthogonality_structured();
        }
        for k1 in 0..self.class_count() {
            for k2 in k1..self.class_count() {
                let mut raw = vec![0i128; p as usize];
                for r in 0..self.row_count() {
                    let Some((c1, e1)) = self.value_mono(r, k1) else { continue };
                    let Some((c2, e2)) = self.value_mono(r, self.inv_class[k2]) else {
                        continue;
                    };
                    raw[((e1 + e2) % p) as usize] += c1 as i128 * c2 as i128;
                }
                let expected =
                    if k1 == k2 { order / self.class_sizes[k1] as i128 } else { 0 };
                if !Self::raw_is_integer(&raw, expected) {
                    return Err(Error::IdentityViolation(format!(
                        "column orthogonality fails for classes {k1}, {k2}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Column orthogonality for large p, by case analysis on centrality.
    fn verify_column_orthogonality_structured(&self) -> Result<()> {
        let p = self.p;
        let order = (p * p * p) as i128;
        // Central columns against everything: at most p * class_count pairs.
        for k1 in 0..=(p as usize - 1) {
            for k2 in 0..self.class_count() {
                let mut raw = vec![0i128; p as usize];
                for r in 0..self.row_count() {
                    let Some((c1, e1)) = self.value_mono(r, k1) else { continue };
                    let Some((c2, e2)) = self.value_mono(r, self.inv_class[k2]) else {
                        continue;
                    };
                    raw[((e1 + e2) % p) as usize] += c1 as i128 * c2 as i128;
                }
                let expected = if k1 == k2 { order } else { 0 };
                if !Self::raw_is_integer(&raw, expected) {
                    return Err(Error::IdentityViolation(format!(
                        "column orthogonality fails for classes {k1}, {k2}"
                    )));
                }
            }
        }
        // Noncentral x noncentral: nonlinear rows vanish, and the linear sum
        // depends only on the (b, c)-exponent difference of the two columns.
        for db in 0..p {
            for dc in 0..p {
                let mut raw = vec![0i128; p as usize];
                for s in 0..p {
                    for t in 0..p {
                        raw[((s * db + t * dc) % p) as usize] += 1;
                    }
                }
                let expected = if db == 0 && dc == 0 { (p * p) as i128 } else { 0 };
                if !Self::raw_is_integer(&raw, expected) {
                    return Err(Error::IdentityViolation(format!(
                        "noncentral column orthogonality fails at difference ({db}, {dc})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// UTF-8 text rendering of the table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "character table of H (order {}), {} classes\n",
            self.p * self.p * self.p,
            self.class_count()
        ));
        out.push_str("classes (rep, size):\n");
        for (k, rep) in self.class_reps.iter().enumerate() {
            out.push_str(&format!(
                "  [{k}] z^{} b^{} c^{}  size {}\n",
                rep.zexp, rep.bexp, rep.cexp, self.class_sizes[k]
            ));
        }
        for r in 0..self.row_count() {
            let name = match self.rows[r] {
                RowSpec::Linear { s, t } => format!("chi({s},{t})"),
                RowSpec::Nonlinear { j } => format!("psi{j}"),
            };
            let vals: Vec<String> =
                (0..self.class_count()).map(|k| self.value(r, k).to_string()).collect();
            out.push_str(&format!("{name}: {}\n", vals.join(" | ")));
        }
        out
    }

    /// JSON rendering: classes, degrees, and values as coefficient vectors.
    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .class_reps
            .iter()
            .zip(&self.class_sizes)
            .map(|(rep, size)| {
                json!({
                    "rep": { "zexp": rep.zexp, "bexp": rep.bexp, "cexp": rep.cexp },
                    "size": size,
                })
            })
            .collect();
        let rows: Vec<Value> = (0..self.row_count())
            .map(|r| {
                let name = match self.rows[r] {
                    RowSpec::Linear { s, t } => format!("chi({s},{t})"),
                    RowSpec::Nonlinear { j } => format!("psi{j}"),
                };
                let values: Vec<Value> = (0..self.class_count())
                    .map(|k| cycnum_to_json(&self.value(r, k)))
                    .collect();
                json!({ "name": name, "degree": self.degree(r), "values": values })
            })
            .collect();
        json!({ "p": self.p, "classes": classes, "rows": rows })
    }
}

/// Coefficient vector of a cyclotomic number as exact strings.
pub fn cycnum_to_json(x: &CycNum) -> Value {
    Value::Array(x.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

/// Builds the full character table of the Heisenberg group of order p^3:
/// p^2 linear rows inflated from C_p x C_p and p-1 nonlinear rows of
/// degree p that vanish off the center.
pub fn char_table_heisenberg(p: u64) -> Result<CharTable> {
    let model = heisenberg(p)?;
    Ok(char_table_for(&model))
}

/// Character table sharing the class layout of an existing group model.
pub fn char_table_for(model: &GroupModel) -> CharTable {
    let p = model.p();
    let class_reps: Vec<HeisenbergElement> =
        model.classes().iter().map(|c| c.rep).collect();
    let class_sizes: Vec<u64> =
        model.classes().iter().map(|c| c.members.len() as u64).collect();
    let inv_class: Vec<usize> =
        (0..class_reps.len()).map(|k| model.inverse_class(k)).collect();
    let mut rows = Vec::with_capacity((p * p + p - 1) as usize);
    for s in 0..p {
        for t in 0..p {
            rows.push(RowSpec::Linear { s, t });
        }
    }
    for j in 1..p {
        rows.push(RowSpec::Nonlinear { j });
    }
    CharTable { p, class_reps, class_sizes, inv_class, rows }
}

/// The three named conjugacy classes of the PSL(2, p^3) fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PslClass {
    One,
    G,
    H,
}

/// The two-row, three-column fragment of the character table of
/// G = PSL(2, p^3): the characters eta and eta' on 1 and on the two
/// classes of elements of order p.
#[derive(Clone, Debug)]
pub struct PSLFragment {
    p: u64,
    epsilon: i32,
    group_order: u128,
    eta: [CycNum; 3],
    eta_prime: [CycNum; 3],
}

impl PSLFragment {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn epsilon(&self) -> i32 {
        self.epsilon
    }

    /// |PSL(2, p^3)| = p^3 (p^6 - 1) / 2.
    pub fn group_order(&self) -> u128 {
        self.group_order
    }

    pub fn eta(&self, class: PslClass) -> &CycNum {
        &self.eta[class as usize]
    }

    pub fn eta_prime(&self, class: PslClass) -> &CycNum {
        &self.eta_prime[class as usize]
    }

    /// eta(1) = (p^3 + epsilon)/2 as a plain rational.
    pub fn degree(&self) -> Rational {
        rat_frac((self.p * self.p * self.p) as i64 + self.epsilon as i64, 2)
    }
}

/// Builds the PSL(2, p^3) character fragment with exact values: the square
/// root of epsilon p^3 is p times the Gaussian sum.
pub fn psl2_fragment(p: u64) -> Result<PSLFragment> {
    let rd = residue_sets(p)?;
    let epsilon = rd.epsilon();
    let tau = gauss_sum(p)?; // sqrt(epsilon p)
    let sqrt_ep3 = tau.scale(&rat(p as i64)); // sqrt(epsilon p^3)
    let half = rat_frac(1, 2);
    let e = CycNum::from_int(p, epsilon as i64)?;
    let deg = CycNum::from_rational(
        p,
        rat_frac((p * p * p) as i64 + epsilon as i64, 2),
    )?;
    let eta_g = e.try_add(&sqrt_ep3)?.scale(&half);
    let eta_h = e.try_sub(&sqrt_ep3)?.scale(&half);
    let p128 = p as u128;
    let q = p128 * p128 * p128;
    let group_order = q * (q * q - 1) / 2;
    Ok(PSLFragment {
        p,
        epsilon,
        group_order,
        eta: [deg.clone(), eta_g.clone(), eta_h.clone()],
        eta_prime: [deg, eta_h, eta_g],
    })
}

/// Shape of a Sylow r-subgroup of PSL(2, q) per Dickson's classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SylowShapeKind {
    ElementaryAbelian,
    Cyclic,
    Dihedral,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowShape {
    pub r: u64,
    pub kind: SylowShapeKind,
    /// Citation key when the case is settled by cited literature rather
    /// than by this engine.
    pub settled_by: Option<&'static str>,
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            let mut n = q;
            let mut f = 0;
            while n % d == 0 {
                n /= d;
                f += 1;
            }
            return if n == 1 { Some((d, f)) } else { None };
        }
        d += 1;
    }
    Some((q, 1))
}

fn is_prime(n: u64) -> bool {
    n == 2 || is_odd_prime(n)
}

/// |PSL(2, q)| = q (q^2 - 1) / gcd(2, q - 1).
pub fn psl2_order(q: u64) -> u128 {
    let q = q as u128;
    let d = if q % 2 == 0 { 1 } else { 2 };
    q * (q * q - 1) / d
}

/// Prime divisors of n, ascending.
pub fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// Dickson's trichotomy for the Sylow r-subgroups of PSL(2, q), q = p^f:
/// elementary abelian for r = p, cyclic for odd r != p, dihedral for
/// r = 2 != p.
pub fn sylow_shape(q: u64, r: u64) -> Result<SylowShape> {
    let (p, _f) = factor_prime_power(q).ok_or_else(|| {
        Error::InvalidParameter(format!("{q} is not a prime power"))
    })?;
    if q < 4 {
        return Err(Error::InvalidParameter(format!(
            "PSL(2, {q}) is not simple; Dickson dispatch requires q >= 4"
        )));
    }
    if !is_prime(r) {
        return Err(Error::InvalidParameter(format!("{r} is not prime")));
    }
    if psl2_order(q) % r as u128 != 0 {
        return Err(Error::InvalidParameter(format!(
            "{r} does not divide |PSL(2, {q})|"
        )));
    }
    let shape = if r == p {
        SylowShape {
            r,
            kind: SylowShapeKind::ElementaryAbelian,
            settled_by: if p == 2 {
                Some("elementary-abelian-2-sylow-literature")
            } else {
                None
            },
        }
    } else if r == 2 {
        SylowShape {
            r,
            kind: SylowShapeKind::Dihedral,
            settled_by: Some("dihedral-2-sylow-literature"),
        }
    } else {
        SylowShape {
            r,
            kind: SylowShapeKind::Cyclic,
            settled_by: Some("cyclic-sylow-literature"),
        }
    };
    Ok(shape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn heisenberg_presentation_relations() {
        for p in [3u64, 5, 7] {
            let z = HeisenbergElement::new(p, 1, 0, 0);
            let b = HeisenbergElement::new(p, 0, 1, 0);
            let c = HeisenbergElement::new(p, 0, 0, 1);
            // c^{-1} b c = z b
            let conj = b.conjugate_by(&c, p);
            assert_eq!(conj, z.mul(&b, p), "p = {p}");
            // z central
            for s in 0..p {
                for t in 0..p {
                    let w = HeisenbergElement::new(p, 0, s as i64, t as i64);
                    assert_eq!(z.mul(&w, p), w.mul(&z, p));
                }
            }
            // commutator [b, c] = z
            let comm = b.inverse(p).mul(&c.inverse(p), p).mul(&b, p).mul(&c, p);
            assert_eq!(comm, z);
        }
    }

    #[test]
    fn associativity_exhaustive_p3() {
        let model = heisenberg(3).unwrap();
        let els = model.elements();
        for a in els {
            for b in els {
                for c in els {
                    assert_eq!(a.mul(b, 3).mul(c, 3), a.mul(&b.mul(c, 3), 3));
                }
            }
        }
    }

    #[test]
    fn associativity_sampled_p5_p7() {
        for p in [5u64, 7] {
            let model = heisenberg(p).unwrap();
            let els = model.elements();
            // Deterministic stride sampling across all triples.
            let n = els.len();
            let mut state = 1usize;
            for _ in 0..20_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                let i = state % n;
                let j = state / n % n;
                let k = state / (n * n) % n;
                let (a, b, c) = (&els[i], &els[j], &els[k]);
                assert_eq!(a.mul(b, p).mul(c, p), a.mul(&b.mul(c, p), p));
            }
        }
    }

    #[test]
    fn every_nonidentity_element_has_order_p() {
        for p in [3u64, 5, 7] {
            let model = heisenberg(p).unwrap();
            for e in model.elements() {
                if e.is_identity() {
                    continue;
                }
                assert_eq!(e.pow(p, p), HeisenbergElement::identity());
                for k in 1..p {
                    assert_ne!(e.pow(k, p), HeisenbergElement::identity());
                }
            }
        }
    }

    /// Independent class oracle: brute-force conjugation by every element.
    fn brute_classes(model: &GroupModel) -> Vec<BTreeSet<HeisenbergElement>> {
        let p = model.p();
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for e in model.elements() {
            if seen.contains(e) {
                continue;
            }
            let cls: BTreeSet<HeisenbergElement> =
                model.elements().iter().map(|g| e.conjugate_by(g, p)).collect();
            for m in &cls {
                seen.insert(*m);
            }
            classes.push(cls);
        }
        classes
    }

    #[test]
    fn classes_match_brute_force() {
        for p in [3u64, 5] {
            let model = heisenberg(p).unwrap();
            let brute = brute_classes(&model);
            let structural: Vec<BTreeSet<HeisenbergElement>> = model
                .classes()
                .iter()
                .map(|c| c.members.iter().copied().collect())
                .collect();
            let brute_set: BTreeSet<_> = brute.into_iter().collect();
            let structural_set: BTreeSet<_> = structural.into_iter().collect();
            assert_eq!(brute_set, structural_set, "p = {p}");
        }
    }

    #[test]
    fn class_counts_and_equation() {
        for (p, expected) in [(3u64, 11usize), (5, 29), (7, 55)] {
            let model = heisenberg(p).unwrap();
            assert_eq!(model.classes().len(), expected);
            assert_eq!(model.center().len(), p as usize);
            let total: usize = model.classes().iter().map(|c| c.members.len()).sum();
            assert_eq!(total as u64, model.order());
            // 1 * p singletons + p * (p^2 - 1) from noncentral classes
            let singles = model.classes().iter().filter(|c| c.members.len() == 1).count();
            assert_eq!(singles as u64, p);
        }
    }

    #[test]
    fn class_index_is_consistent() {
        let model = heisenberg(5).unwrap();
        for (k, class) in model.classes().iter().enumerate() {
            for m in &class.members {
                assert_eq!(model.class_index(m), k);
            }
        }
        for k in 0..model.classes().len() {
            let inv = model.inverse_class(k);
            assert_eq!(model.inverse_class(inv), k);
        }
    }

    #[test]
    fn char_table_shape_and_values() {
        let t = char_table_heisenberg(3).unwrap();
        assert_eq!(t.row_count(), 11);
        let deg_sq: u64 = (0..t.row_count()).map(|r| t.degree(r) * t.degree(r)).sum();
        assert_eq!(deg_sq, 27);
        // psi_1(z) = 3 zeta
        let z_class = 1;
        let psi1 = t.nonlinear_row(1);
        let expected = CycNum::root_of_unity(3, 1).unwrap().scale(&rat(3));
        assert_eq!(t.value(psi1, z_class), expected);
        // psi_1(b) = 0
        let b_class = t
            .class_reps()
            .iter()
            .position(|r| r.bexp == 1 && r.cexp == 0 && r.zexp == 0)
            .unwrap();
        assert!(t.value(psi1, b_class).is_zero());
    }

    #[test]
    fn orthogonality_small_primes() {
        for p in [3u64, 5, 7] {
            let t = char_table_heisenberg(p).unwrap();
            t.verify_row_orthogonality().unwrap();
            t.verify_column_orthogonality().unwrap();
        }
    }

    #[test]
    fn structured_orthogonality_agrees() {
        // Force the structured path and compare with the pairwise path.
        let t = char_table_heisenberg(7).unwrap();
        t.verify_row_orthogonality_structured().unwrap();
        t.verify_column_orthogonality_structured().unwrap();
    }

    #[test]
    fn inner_product_examples() {
        let t = char_table_heisenberg(3).unwrap();
        let psi1 = t.row_values(t.nonlinear_row(1));
        let triv = t.row_values(t.linear_row(0, 0));
        let one = t.inner_product(&psi1, &psi1).unwrap();
        assert_eq!(one.to_rational().unwrap(), rat(1));
        let zero = t.inner_product(&triv, &psi1).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn psl_fragment_values_p3() {
        let frag = psl2_fragment(3).unwrap();
        assert_eq!(frag.epsilon(), -1);
        assert_eq!(frag.eta(PslClass::One).to_rational().unwrap(), rat(13));
        let eta_g = CycNum::reduce(3, &[rat(1), rat(3)]).unwrap();
        let eta_h = CycNum::reduce(3, &[rat(-2), rat(-3)]).unwrap();
        assert_eq!(*frag.eta(PslClass::G), eta_g);
        assert_eq!(*frag.eta(PslClass::H), eta_h);
        assert_eq!(*frag.eta_prime(PslClass::G), eta_h);
        assert_eq!(frag.group_order(), 27 * (27u128 * 27 - 1) / 2);
    }

    #[test]
    fn psl_fragment_invariants() {
        for p in [3u64, 5, 7, 11, 13] {
            let frag = psl2_fragment(p).unwrap();
            let rd = residue_sets(p).unwrap();
            let e = frag.epsilon() as i64;
            let sum = frag.eta(PslClass::G).try_add(frag.eta(PslClass::H)).unwrap();
            assert_eq!(sum.to_rational().unwrap(), rat(e));
            let diff = frag.eta(PslClass::G).try_sub(frag.eta(PslClass::H)).unwrap();
            let tau_p = gauss_sum(p).unwrap().scale(&rat(p as i64));
            assert_eq!(diff, tau_p);
            // Galois conjugacy under any non-residue exponent.
            for &n in rd.non_residues() {
                assert_eq!(
                    frag.eta(PslClass::G).galois(n).unwrap(),
                    *frag.eta(PslClass::H)
                );
            }
            // eta + eta' is rational on all three classes.
            for class in [PslClass::One, PslClass::G, PslClass::H] {
                let s = frag.eta(class).try_add(frag.eta_prime(class)).unwrap();
                assert!(s.is_rational());
            }
        }
    }

    #[test]
    fn sylow_dispatch_q27() {
        use SylowShapeKind::*;
        assert_eq!(sylow_shape(27, 3).unwrap().kind, ElementaryAbelian);
        assert!(sylow_shape(27, 3).unwrap().settled_by.is_none());
        assert_eq!(sylow_shape(27, 13).unwrap().kind, Cyclic);
        assert_eq!(sylow_shape(27, 7).unwrap().kind, Cyclic);
        assert_eq!(sylow_shape(27, 2).unwrap().kind, Dihedral);
        assert!(sylow_shape(27, 5).is_err());
        assert!(sylow_shape(24, 2).is_err());
    }

    #[test]
    fn noncentral_subgroup_representatives() {
        // The subgroups <c> and <b c^i> hit all p + 1 subgroup classes once:
        // their images in H/Z are the p + 1 distinct lines.
        for p in [3u64, 5, 7] {
            let mut lines = BTreeSet::new();
            // line of c: (0, 1)
            lines.insert((0u64, 1u64));
            for i in 0..p {
                // line of b c^i: normalized direction (1, i)
                lines.insert((1, i));
            }
            assert_eq!(lines.len() as u64, p + 1);
        }
    }
}
