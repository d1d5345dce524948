//! Quadratic functions Q(x) = Σ Tr(c_i x^{e_i}) on GF(p^m), their bilinear
//! (Gram) matrices, ranks, exact Walsh spectra, and classification into the
//! three standard types of quadratic forms in m variables over F_p.
//!
//! All spectral arithmetic is exact: a Walsh value is kept as the count
//! vector of its p-th-root-of-unity phases, and squared magnitudes are
//! reduced to integers through the autocorrelation identity, so Bentness is
//! decided by integer comparisons alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{nu, FieldElement, FieldSpec, PrimeResidue};
use crate::linalg;

/// A function GF(p^m) → F_p given as a list of trace terms:
/// Q(x) = Σ_i Tr(c_i · x^{e_i}).
///
/// The term list is kept exactly as supplied; nothing here requires the
/// function to actually be quadratic.  [`QFunction::gram_matrix`] performs
/// the quadratic-form validation and rejects anything that fails it, while
/// the Walsh-based routines work for arbitrary term lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFunction {
    field: FieldSpec,
    terms: Vec<(FieldElement, u64)>,
}

/// Symmetric m×m matrix over F_p with entries B(β_i, β_j), where
/// B(x, y) = Q(x+y) − Q(x) − Q(y) and β_i runs over the polynomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    p: u64,
    m: usize,
    entries: Vec<Vec<u64>>,
}

impl GramMatrix {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Rank over F_p by row elimination.  Because p is odd this equals the
    /// rank of the quadratic form itself.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries, self.p)
    }
}

/// An exact Walsh value: counts n_j of domain points x falling in each phase
/// class Q(x) − Tr(λx) ≡ j (mod p).  The complex value is Σ_j n_j ω^j for a
/// primitive p-th root of unity ω, but only the counts are ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshValue {
    p: u64,
    counts: Vec<u64>,
}

impl WalshValue {
    pub fn new(p: u64, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), p as usize, "need one count per residue class");
        WalshValue { p, counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// c_k = Σ_j n_j · n_{(j+k) mod p}, the coefficient vector of
    /// |Σ n_j ω^j|² written in powers of ω.
    pub fn autocorrelation(&self) -> Vec<u64> {
        let p = self.p as usize;
        let mut c = vec![0u64; p];
        for (k, ck) in c.iter_mut().enumerate() {
            for j in 0..p {
                *ck += self.counts[j] * self.counts[(j + k) % p];
            }
        }
        c
    }

    /// The exact integer |W|², or `None` when the squared magnitude is
    /// irrational.  Using 1 + ω + … + ω^{p−1} = 0, the autocorrelation
    /// vector collapses to c_0 − c_1 exactly when c_1 = … = c_{p−1};
    /// otherwise the value lies outside the rationals, which already rules
    /// out |W|² = p^m.
    pub fn norm_sq(&self) -> Option<u64> {
        let c = self.autocorrelation();
        if c[1..].iter().all(|&x| x == c[1]) {
            Some(c[0] - c[1])
        } else {
            None
        }
    }
}

/// The three standard shapes a quadratic form in m variables over F_p can
/// take after a nonsingular change of coordinates, plus a defensive bucket
/// for value patterns matching none of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CanonicalType {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "III")]
    TypeIII,
    #[serde(rename = "degenerate")]
    Degenerate,
}

/// For Type II forms: whether the distinguished coefficient μ is a square
/// or the fixed nonsquare of F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MuClass {
    Square,
    Nonsquare,
}

/// Everything the classifier can say about one quadratic function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClassification {
    /// Rank r of the associated bilinear form, 0 ≤ r ≤ m.
    pub rank: usize,
    /// Bent ⇔ full rank.
    pub bent: bool,
    pub canonical_type: CanonicalType,
    /// +1 or −1 for bent forms in even dimension; 0 otherwise.
    pub epsilon: i8,
    /// Set exactly when `canonical_type` is Type II.
    pub type2_mu_class: Option<MuClass>,
    /// Number of nonzero x with Q(x) = 0.
    pub zero_count: u64,
}

impl QFunction {
    /// Builds Q(x) = Σ Tr(c_i x^{e_i}).  Coefficients must belong to the
    /// field; exponents must be at least 1 (so Q(0) = 0 holds structurally).
    pub fn from_terms(field: FieldSpec, terms: Vec<(FieldElement, u64)>) -> Result<QFunction> {
        for (c, e) in &terms {
            if c.coeffs().len() != field.m() || c.coeffs().iter().any(|&x| x >= field.p()) {
                return Err(Error::BadElement {
                    coeffs: c.coeffs().to_vec(),
                    p: field.p(),
                    m: field.m(),
                });
            }
            if *e == 0 {
                return Err(Error::BadExponent(*e));
            }
        }
        Ok(QFunction { field, terms })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> &[(FieldElement, u64)] {
        &self.terms
    }

    /// Q(x) as a residue mod p.
    pub fn eval(&self, x: &FieldElement) -> PrimeResidue {
        let mut s = self.field.zero();
        for (c, e) in &self.terms {
            s = self.field.add(&s, &self.field.mul(c, &self.field.pow(x, *e)));
        }
        self.field.trace(&s)
    }

    /// Q at every element, indexed by [`FieldSpec::element_index`].
    pub fn value_table(&self) -> Vec<PrimeResidue> {
        (0..self.field.order() as usize)
            .map(|i| self.eval(&self.field.element_at(i)))
            .collect()
    }

    /// Histogram of Q over the whole field: entry ζ counts all x (including
    /// x = 0) with Q(x) = ζ.
    pub fn value_counts(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.field.p() as usize];
        for v in self.value_table() {
            hist[v as usize] += 1;
        }
        hist
    }

    /// Validates that Q really is a quadratic form and returns its Gram
    /// matrix.  Two exhaustive checks run: the scalar-homogeneity identity
    /// Q(yx) = y²Q(x), and agreement of Q with the form reconstructed from
    /// the Gram matrix at every point of the field.  Either failure means
    /// the term list does not define a quadratic form.
    pub fn gram_matrix(&self) -> Result<GramMatrix> {
        let f = &self.field;
        let (p, m) = (f.p(), f.m());
        let table = self.value_table();
        if table[0] != 0 {
            return Err(Error::NotQuadratic("Q(0) is nonzero".into()));
        }
        for (idx, x) in f.elements().enumerate() {
            let qx = table[idx];
            for y in 2..p {
                let lhs = table[f.element_index(&f.scale(y, &x))];
                if lhs != y * y % p * qx % p {
                    return Err(Error::NotQuadratic(format!(
                        "homogeneity fails at x = {:?}, scalar {y}",
                        x.coeffs()
                    )));
                }
            }
        }

        let q_at = |coeffs: &[u64]| -> u64 {
            let e = f.element(coeffs).expect("basis combination is in range");
            table[f.element_index(&e)]
        };
        let mut entries = vec![vec![0u64; m]; m];
        for i in 0..m {
            for j in i..m {
                let mut sum = vec![0u64; m];
                sum[i] += 1;
                sum[j] += 1; // i == j gives the element 2·β_i
                let qi = {
                    let mut v = vec![0u64; m];
                    v[i] = 1;
                    q_at(&v)
                };
                let qj = {
                    let mut v = vec![0u64; m];
                    v[j] = 1;
                    q_at(&v)
                };
                let b = (q_at(&sum) + 2 * p - qi - qj) % p;
                entries[i][j] = b;
                entries[j][i] = b;
            }
        }

        // Q must agree with x̄ᵀGx̄ / 2 everywhere, otherwise the function has
        // degree > 2 hiding behind a homogeneity coincidence.
        let inv2 = (p + 1) / 2;
        for (idx, x) in f.elements().enumerate() {
            let xs = x.coeffs();
            let mut s = 0u64;
            for i in 0..m {
                if xs[i] == 0 {
                    continue;
                }
                for j in 0..m {
                    s = (s + xs[i] * entries[i][j] % p * xs[j]) % p;
                }
            }
            if s * inv2 % p != table[idx] {
                return Err(Error::NotQuadratic(format!(
                    "value at x = {:?} disagrees with the bilinear reconstruction",
                    x.coeffs()
                )));
            }
        }

        Ok(GramMatrix { p, m, entries })
    }

    /// Bentness by the algebraic route: full rank of the Gram matrix.
    pub fn is_bent_rank(&self) -> Result<bool> {
        Ok(self.gram_matrix()?.rank() == self.field.m())
    }

    /// Walsh value at λ: tallies x by the residue Q(x) − Tr(λx).
    pub fn walsh(&self, lambda: &FieldElement) -> WalshValue {
        let table = self.value_table();
        self.walsh_with_table(&table, lambda)
    }

    fn walsh_with_table(&self, table: &[u64], lambda: &FieldElement) -> WalshValue {
        let f = &self.field;
        let (p, m) = (f.p(), f.m());
        // Tr(λx) is F_p-linear in the coordinates of x, so m basis traces
        // suffice for the whole sweep.
        let basis_traces: Vec<u64> = (0..m).map(|i| f.trace(&f.mul(lambda, &f.basis(i)))).collect();
        let mut counts = vec![0u64; p as usize];
        for (idx, x) in f.elements().enumerate() {
            let mut t = 0u64;
            for (c, bt) in x.coeffs().iter().zip(&basis_traces) {
                t = (t + c * bt) % p;
            }
            counts[((table[idx] + p - t) % p) as usize] += 1;
        }
        WalshValue { p, counts }
    }

    /// Bentness by the spectral route: |Ŵ(λ)|² = p^m for every λ, decided
    /// entirely in integers.  Works for non-quadratic term lists too.
    pub fn is_bent_walsh(&self) -> bool {
        let table = self.value_table();
        let target = self.field.order();
        self.field
            .elements()
            .all(|lambda| self.walsh_with_table(&table, &lambda).norm_sq() == Some(target))
    }

    /// The nonzero roots of Q in generator-power order g^0, g^1, ….
    pub fn zero_set(&self) -> Vec<FieldElement> {
        let table = self.value_table();
        self.field
            .nonzero_in_generator_order()
            .filter(|x| table[self.field.element_index(x)] == 0)
            .collect()
    }

    /// N_b = #{x ≠ 0 : Q(x) = 0 and Tr(bx) = 0}, computed by a fresh scan
    /// (independent of `zero_set`, so the two can cross-check each other).
    pub fn annihilator_count(&self, b: &FieldElement) -> u64 {
        let f = &self.field;
        f.elements()
            .filter(|x| !x.is_zero() && self.eval(x) == 0 && f.trace(&f.mul(b, x)) == 0)
            .count() as u64
    }

    /// Full classification: rank, Bentness, canonical type, ε (even
    /// dimension), μ-class (Type II), and the zero count.
    pub fn classify(&self) -> Result<FormClassification> {
        let f = &self.field;
        let (p, m) = (f.p(), f.m());
        let gram = self.gram_matrix()?;
        let r = gram.rank();
        let bent = r == m;
        let hist = self.value_counts();
        let zero_count = hist[0] - 1; // discount x = 0

        let matches_template = |ctype: CanonicalType, mu: Option<MuClass>| -> Result<bool> {
            for zeta in 0..p {
                let expected = theoretical_count(p, m, ctype, r, mu, zeta)?;
                if expected != hist[zeta as usize] as i64 {
                    return Ok(false);
                }
            }
            Ok(true)
        };

        if bent && m % 2 == 0 {
            // Solve |D_Q| = p^{m−1} + ε(p−1)p^{(m−2)/2} − 1 for ε = ±1.
            let base = pow_u(p, m - 1) as i64;
            let step = (p as i64 - 1) * pow_u(p, (m - 2) / 2) as i64;
            let eps = if zero_count as i64 == base + step - 1 {
                1
            } else if zero_count as i64 == base - step - 1 {
                -1
            } else {
                return Err(Error::TheoryViolation(format!(
                    "bent form zero count {zero_count} solves for no epsilon at p={p}, m={m}"
                )));
            };
            let ctype = if eps == 1 {
                CanonicalType::TypeI
            } else {
                CanonicalType::TypeIII
            };
            if !matches_template(ctype, None)? {
                return Err(Error::TheoryViolation(
                    "bent even-dimension value counts break the rank-m template".into(),
                ));
            }
            return Ok(FormClassification {
                rank: r,
                bent,
                canonical_type: ctype,
                epsilon: eps,
                type2_mu_class: None,
                zero_count,
            });
        }

        if bent {
            // Odd dimension: necessarily Type II; read the μ-class off the
            // count of Q(x) = 1.
            let mu = solve_mu(p, m, r, hist[1])?;
            if !matches_template(CanonicalType::TypeII, Some(mu))? {
                return Err(Error::TheoryViolation(
                    "bent odd-dimension value counts break the rank-m template".into(),
                ));
            }
            return Ok(FormClassification {
                rank: r,
                bent,
                canonical_type: CanonicalType::TypeII,
                epsilon: 0,
                type2_mu_class: Some(mu),
                zero_count,
            });
        }

        // Degenerate rank: try the templates of matching parity.
        let candidates: Vec<(CanonicalType, Option<MuClass>)> = if r % 2 == 0 {
            vec![(CanonicalType::TypeI, None), (CanonicalType::TypeIII, None)]
        } else {
            vec![
                (CanonicalType::TypeII, Some(MuClass::Square)),
                (CanonicalType::TypeII, Some(MuClass::Nonsquare)),
            ]
        };
        for (ctype, mu) in candidates {
            if matches_template(ctype, mu)? {
                return Ok(FormClassification {
                    rank: r,
                    bent,
                    canonical_type: ctype,
                    epsilon: 0,
                    type2_mu_class: mu,
                    zero_count,
                });
            }
        }
        Ok(FormClassification {
            rank: r,
            bent,
            canonical_type: CanonicalType::Degenerate,
            epsilon: 0,
            type2_mu_class: None,
            zero_count,
        })
    }

    /// Distribution of N_b = #{x ≠ 0 : Q(x) = 0, Tr(bx) = 0} as b runs over
    /// the field, as a value → multiplicity map.  Only defined for bent Q;
    /// the empirical tally is verified against the closed-form table before
    /// being returned.
    pub fn nb_distribution(&self) -> Result<BTreeMap<u64, u64>> {
        let f = &self.field;
        let (p, m) = (f.p(), f.m());
        let needs = if m % 2 == 0 { 2 } else { 3 };
        if m < needs {
            return Err(Error::DegreeTooSmall { needs, got: m });
        }
        let cls = self.classify()?;
        if !cls.bent {
            return Err(Error::TheoryViolation(
                "annihilator-count distribution is defined only for bent functions".into(),
            ));
        }

        let zeros = self.zero_set();
        let mut empirical: BTreeMap<u64, u64> = BTreeMap::new();
        for b in f.elements() {
            let basis_traces: Vec<u64> =
                (0..m).map(|i| f.trace(&f.mul(&b, &f.basis(i)))).collect();
            let mut n_b = 0u64;
            for x in &zeros {
                let mut t = 0u64;
                for (c, bt) in x.coeffs().iter().zip(&basis_traces) {
                    t = (t + c * bt) % p;
                }
                if t == 0 {
                    n_b += 1;
                }
            }
            *empirical.entry(n_b).or_insert(0) += 1;
        }

        let expected = theoretical_nb_distribution(p, m, cls.epsilon)?;
        if empirical != expected {
            return Err(Error::TheoryViolation(format!(
                "annihilator-count distribution {empirical:?} disagrees with the closed form {expected:?}"
            )));
        }
        Ok(empirical)
    }
}

/// Closed-form count of solutions to Q(x̄) = ζ in F_p^m for a form of rank r
/// of the given canonical type (the count includes x̄ = 0).  Type II needs a
/// μ-class.  The value can be negative for low-rank Type III templates, so
/// the result is signed.
pub fn theoretical_count(
    p: u64,
    m: usize,
    ctype: CanonicalType,
    r: usize,
    mu: Option<MuClass>,
    zeta: u64,
) -> Result<i64> {
    if r > m {
        return Err(Error::BadCountTemplate(format!(
            "rank {r} exceeds dimension {m}"
        )));
    }
    let zeta = zeta % p;
    let base = pow_u(p, m - 1) as i64;
    match ctype {
        CanonicalType::TypeI | CanonicalType::TypeIII => {
            if r % 2 != 0 {
                return Err(Error::BadCountTemplate(format!(
                    "type needs even rank, got {r}"
                )));
            }
            // exponent m − r/2 − 1 ≥ m − m/2 − 1 ≥ −1, and = −1 only if
            // r = m with m odd, excluded by the parity check above
            let tail = pow_u(p, m - r / 2 - 1) as i64;
            let sign = if ctype == CanonicalType::TypeI { 1 } else { -1 };
            Ok(base + sign * nu(zeta, p) * tail)
        }
        CanonicalType::TypeII => {
            if r % 2 == 0 {
                return Err(Error::BadCountTemplate(format!(
                    "type needs odd rank, got {r}"
                )));
            }
            let mu = mu.ok_or_else(|| {
                Error::BadCountTemplate("the odd-rank type needs a mu class".into())
            })?;
            let tail = pow_u(p, m - (r + 1) / 2) as i64;
            // η(μζ) = η(μ)η(ζ); μ is 1 or the fixed nonsquare, so η(μ) = ±1.
            let eta_mu: i64 = match mu {
                MuClass::Square => 1,
                MuClass::Nonsquare => -1,
            };
            let eta_zeta = crate::field::quadratic_character(zeta, p) as i64;
            Ok(base + eta_mu * eta_zeta * tail)
        }
        CanonicalType::Degenerate => Err(Error::BadCountTemplate(
            "no count template for an unclassified form".into(),
        )),
    }
}

/// Solve the μ-class from the count of Q(x) = 1 at odd rank r:
/// the template gives p^{m−1} ± p^{m−(r+1)/2}.
fn solve_mu(p: u64, m: usize, r: usize, count_one: u64) -> Result<MuClass> {
    let base = pow_u(p, m - 1) as i64;
    let tail = pow_u(p, m - (r + 1) / 2) as i64;
    let c = count_one as i64;
    if c == base + tail {
        Ok(MuClass::Square)
    } else if c == base - tail {
        Ok(MuClass::Nonsquare)
    } else {
        Err(Error::TheoryViolation(format!(
            "count {count_one} of Q(x)=1 solves for no mu class at p={p}, m={m}, r={r}"
        )))
    }
}

/// The closed-form distribution of annihilator counts N_b for a bent form:
/// odd dimension has a four-row table, even dimension a three-row table
/// driven by ε.  Rows that collide on the same value are merged and rows of
/// multiplicity zero are dropped.
pub fn theoretical_nb_distribution(p: u64, m: usize, epsilon: i8) -> Result<BTreeMap<u64, u64>> {
    let rows: Vec<(i64, i64)> = if m % 2 == 1 {
        if m < 3 {
            return Err(Error::DegreeTooSmall { needs: 3, got: m });
        }
        let a = pow_u(p, m - 1) as i64;
        let b = pow_u(p, m - 2) as i64;
        let step = (p as i64 - 1) * pow_u(p, (m - 3) / 2) as i64;
        let half = (p as i64 - 1) / 2;
        let root = pow_u(p, (m - 1) / 2) as i64;
        vec![
            (a - 1, 1),
            (b - 1, a - 1),
            (b + step - 1, half * (a + root)),
            (b - step - 1, half * (a - root)),
        ]
    } else {
        if m < 2 {
            return Err(Error::DegreeTooSmall { needs: 2, got: m });
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::BadEpsilon(epsilon));
        }
        let e = epsilon as i64;
        let a = pow_u(p, m - 1) as i64;
        let b = pow_u(p, m - 2) as i64;
        let step = (p as i64 - 1) * pow_u(p, (m - 2) / 2) as i64;
        let root = pow_u(p, (m - 2) / 2) as i64;
        vec![
            (a + e * step - 1, 1),
            (b - 1, (p as i64 - 1) * (a - e * root)),
            (b + e * step - 1, a + e * step - 1),
        ]
    };

    let mut dist = BTreeMap::new();
    for (value, mult) in rows {
        if mult == 0 {
            continue;
        }
        if value < 0 || mult < 0 {
            return Err(Error::BadCountTemplate(format!(
                "negative entry (value {value}, multiplicity {mult}) at p={p}, m={m}"
            )));
        }
        *dist.entry(value as u64).or_insert(0u64) += mult as u64;
    }
    Ok(dist)
}

/// Is the map π a planar function — does x ↦ π(x+a) − π(x) hit every field
/// element exactly once for each nonzero a?
pub fn is_planar<F>(field: &FieldSpec, pi: F) -> bool
where
    F: Fn(&FieldElement) -> FieldElement,
{
    let q = field.order() as usize;
    let table: Vec<FieldElement> = (0..q).map(|i| pi(&field.element_at(i))).collect();
    for a in field.elements().filter(|a| !a.is_zero()) {
        let mut seen = vec![false; q];
        for x in field.elements() {
            let shifted = &table[field.element_index(&field.add(&x, &a))];
            let diff = field.sub(shifted, &table[field.element_index(&x)]);
            let slot = field.element_index(&diff);
            if seen[slot] {
                return false;
            }
            seen[slot] = true;
        }
    }
    true
}

/// Evaluates a field-valued polynomial Σ c_i x^{e_i} (no trace applied).
pub fn eval_field_poly(
    field: &FieldSpec,
    terms: &[(FieldElement, u64)],
    x: &FieldElement,
) -> FieldElement {
    let mut s = field.zero();
    for (c, e) in terms {
        s = field.add(&s, &field.mul(c, &field.pow(x, *e)));
    }
    s
}

fn pow_u(p: u64, e: usize) -> u64 {
    p.pow(e as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn qf(p: u64, m: usize, terms: &[(&[u64], u64)]) -> QFunction {
        let f = make_field(p, m).unwrap();
        let ts = terms
            .iter()
            .map(|(c, e)| (f.element(c).unwrap(), *e))
            .collect();
        QFunction::from_terms(f, ts).unwrap()
    }

    #[test]
    fn zero_form_has_zero_gram_matrix_and_rank_zero() {
        let q = qf(3, 3, &[]);
        let g = q.gram_matrix().unwrap();
        assert!(g.entries().iter().all(|row| row.iter().all(|&x| x == 0)));
        assert_eq!(g.rank(), 0);
        assert!(!q.is_bent_rank().unwrap());
        assert_eq!(q.zero_set().len(), 26);
    }

    /// Oracle for the Gram entries of Tr(x²): expanding the square gives
    /// B(β_i, β_j) = 2·Tr(β_i β_j).
    #[test]
    fn gram_of_trace_square_matches_symbolic_expansion() {
        for (p, m) in [(3u64, 2usize), (3, 3), (5, 2)] {
            let f = make_field(p, m).unwrap();
            let q = QFunction::from_terms(f.clone(), vec![(f.one(), 2)]).unwrap();
            let g = q.gram_matrix().unwrap();
            for i in 0..m {
                for j in 0..m {
                    let expect = 2 * f.trace(&f.mul(&f.basis(i), &f.basis(j))) % p;
                    assert_eq!(g.entries()[i][j], expect, "entry ({i},{j}) p={p} m={m}");
                }
            }
            assert_eq!(g.rank(), m);
            assert!(q.is_bent_rank().unwrap());
            assert!(q.is_bent_walsh());
        }
    }

    #[test]
    fn gram_matrix_is_symmetric_with_doubled_diagonal() {
        let q = qf(3, 4, &[(&[1], 10)]); // Tr(x^{3²+1})
        let g = q.gram_matrix().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.entries()[i][j], g.entries()[j][i]);
            }
            let f = q.field();
            let qi = q.eval(&f.basis(i));
            assert_eq!(g.entries()[i][i], 2 * qi % 3);
        }
    }

    #[test]
    fn linear_function_is_rejected_by_homogeneity() {
        let q = qf(3, 1, &[(&[1], 1)]); // Q(x) = x
        assert!(matches!(q.gram_matrix(), Err(Error::NotQuadratic(_))));
        assert!(matches!(q.classify(), Err(Error::NotQuadratic(_))));
    }

    /// x^8 on GF(9) passes scalar homogeneity by accident (y^8 = y² on F_3)
    /// but is not a quadratic form; only the bilinear-reconstruction sweep
    /// catches it.
    #[test]
    fn degree_eight_imposter_is_rejected_by_reconstruction() {
        let q = qf(3, 2, &[(&[1], 8)]);
        let f = q.field();
        // scalar homogeneity really does hold for this imposter
        for x in f.elements() {
            for y in 0..3 {
                assert_eq!(q.eval(&f.scale(y, &x)), y * y % 3 * q.eval(&x) % 3);
            }
        }
        assert!(matches!(q.gram_matrix(), Err(Error::NotQuadratic(_))));
    }

    #[test]
    fn walsh_counts_on_prime_field_square() {
        // p=3, m=1, Q(x) = x², λ = 0: values 0²=0, 1²=1, 2²=1
        let q = qf(3, 1, &[(&[1], 2)]);
        let w = q.walsh(&q.field().zero());
        assert_eq!(w.counts(), &[1, 2, 0]);
        assert_eq!(w.autocorrelation(), vec![5, 2, 2]);
        assert_eq!(w.norm_sq(), Some(3));
    }

    #[test]
    fn walsh_counts_partition_the_domain() {
        let q = qf(3, 3, &[(&[1], 4)]);
        for lam in q.field().elements() {
            let w = q.walsh(&lam);
            assert_eq!(w.counts().iter().sum::<u64>(), 27);
        }
    }

    #[test]
    fn walsh_norm_edge_cases() {
        // constant phase: |W|² = (p^m)²
        let w = WalshValue::new(3, vec![9, 0, 0]);
        assert_eq!(w.norm_sq(), Some(81));
        // balanced phases: W = 0
        let w = WalshValue::new(3, vec![3, 3, 3]);
        assert_eq!(w.norm_sq(), Some(0));
        // p = 5 with unequal off-peak autocorrelations: irrational |W|²
        let w = WalshValue::new(5, vec![1, 2, 0, 0, 0]);
        assert_eq!(w.autocorrelation(), vec![5, 2, 0, 0, 2]);
        assert_eq!(w.norm_sq(), None);
    }

    #[test]
    fn zero_form_fails_the_walsh_test_at_lambda_zero() {
        let q = qf(3, 2, &[]);
        let w = q.walsh(&q.field().zero());
        assert_eq!(w.counts(), &[9, 0, 0]);
        assert_eq!(w.norm_sq(), Some(81));
        assert!(!q.is_bent_walsh());
    }

    #[test]
    fn trace_square_classifies_type_one_on_gf9() {
        let q = qf(3, 2, &[(&[1], 2)]);
        let cls = q.classify().unwrap();
        assert_eq!(cls.rank, 2);
        assert!(cls.bent);
        assert_eq!(cls.canonical_type, CanonicalType::TypeI);
        assert_eq!(cls.epsilon, 1);
        assert_eq!(cls.type2_mu_class, None);
        assert_eq!(cls.zero_count, 4);
    }

    #[test]
    fn kasami_exponent_on_m4_classifies_type_three() {
        let q = qf(3, 4, &[(&[1], 10)]);
        let cls = q.classify().unwrap();
        assert_eq!(cls.rank, 4);
        assert!(cls.bent);
        assert_eq!(cls.canonical_type, CanonicalType::TypeIII);
        assert_eq!(cls.epsilon, -1);
        assert_eq!(cls.zero_count, 20);
    }

    #[test]
    fn odd_dimension_bent_is_type_two_with_resolved_mu() {
        let q = qf(3, 5, &[(&[1], 2)]);
        let cls = q.classify().unwrap();
        assert_eq!(cls.rank, 5);
        assert!(cls.bent);
        assert_eq!(cls.canonical_type, CanonicalType::TypeII);
        assert_eq!(cls.epsilon, 0);
        assert!(cls.type2_mu_class.is_some());
        assert_eq!(cls.zero_count, 80);
    }

    /// The squared trace (Tr x)² = Tr(x²) + Tr(x⁴) on GF(9) is a rank-1
    /// form taking value 1 on six elements, 0 on three: a square-μ Type II.
    #[test]
    fn squared_trace_is_rank_one_type_two() {
        let q = qf(3, 2, &[(&[1], 2), (&[1], 4)]);
        for x in q.field().elements() {
            let t = q.field().trace(&x);
            assert_eq!(q.eval(&x), t * t % 3);
        }
        assert_eq!(q.value_counts(), vec![3, 6, 0]);
        let cls = q.classify().unwrap();
        assert_eq!(cls.rank, 1);
        assert!(!cls.bent);
        assert_eq!(cls.canonical_type, CanonicalType::TypeII);
        assert_eq!(cls.epsilon, 0);
        assert_eq!(cls.type2_mu_class, Some(MuClass::Square));
        assert_eq!(cls.zero_count, 2);
    }

    #[test]
    fn zero_form_classifies_as_rank_zero_type_one() {
        let q = qf(3, 3, &[]);
        let cls = q.classify().unwrap();
        assert_eq!(cls.rank, 0);
        assert_eq!(cls.canonical_type, CanonicalType::TypeI);
        assert_eq!(cls.epsilon, 0);
        assert_eq!(cls.zero_count, 26);
    }

    #[test]
    fn theoretical_counts_partition_and_reject_bad_parity() {
        for (m, r, ctype, mu) in [
            (4usize, 4usize, CanonicalType::TypeI, None),
            (4, 2, CanonicalType::TypeIII, None),
            (5, 5, CanonicalType::TypeII, Some(MuClass::Square)),
            (5, 3, CanonicalType::TypeII, Some(MuClass::Nonsquare)),
        ] {
            for p in [3u64, 5] {
                let total: i64 = (0..p)
                    .map(|z| theoretical_count(p, m, ctype, r, mu, z).unwrap())
                    .sum();
                assert_eq!(total, pow_u(p, m) as i64, "p={p} m={m} r={r}");
            }
        }
        // the odd-rank template at ζ = 0 is exactly p^{m−1}
        assert_eq!(
            theoretical_count(3, 5, CanonicalType::TypeII, 5, Some(MuClass::Square), 0).unwrap(),
            81
        );
        assert!(matches!(
            theoretical_count(3, 4, CanonicalType::TypeI, 3, None, 0),
            Err(Error::BadCountTemplate(_))
        ));
        assert!(matches!(
            theoretical_count(3, 4, CanonicalType::TypeII, 2, Some(MuClass::Square), 0),
            Err(Error::BadCountTemplate(_))
        ));
        assert!(matches!(
            theoretical_count(3, 4, CanonicalType::TypeII, 3, None, 0),
            Err(Error::BadCountTemplate(_))
        ));
        assert!(matches!(
            theoretical_count(3, 4, CanonicalType::TypeI, 6, None, 0),
            Err(Error::BadCountTemplate(_))
        ));
    }

    /// Exhaustive agreement between the classifier's template and the raw
    /// value histogram for a mixed corpus, bent and degenerate alike.
    #[test]
    fn classification_reproduces_value_histograms() {
        let corpus: Vec<QFunction> = vec![
            qf(3, 2, &[(&[1], 2)]),
            qf(3, 2, &[(&[2], 2)]),
            qf(3, 2, &[(&[1], 2), (&[1], 4)]),
            qf(3, 3, &[(&[1], 2)]),
            qf(3, 3, &[(&[0, 1], 4)]),
            qf(3, 3, &[]),
            qf(3, 4, &[(&[1], 10)]),
            qf(5, 2, &[(&[1], 2)]),
            qf(5, 3, &[(&[2], 6)]),
        ];
        for q in &corpus {
            let cls = q.classify().unwrap();
            if cls.canonical_type == CanonicalType::Degenerate {
                continue;
            }
            let hist = q.value_counts();
            for zeta in 0..q.field().p() {
                let expect = theoretical_count(
                    q.field().p(),
                    q.field().m(),
                    cls.canonical_type,
                    cls.rank,
                    cls.type2_mu_class,
                    zeta,
                )
                .unwrap();
                assert_eq!(hist[zeta as usize] as i64, expect);
            }
        }
    }

    #[test]
    fn annihilator_count_at_zero_equals_zero_set_size() {
        let q = qf(3, 4, &[(&[1], 10)]);
        assert_eq!(q.annihilator_count(&q.field().zero()), 20);
        assert_eq!(q.zero_set().len(), 20);
    }

    /// Each x in the zero set lies on exactly p^{m−1} trace hyperplanes, so
    /// the annihilator counts sum to |D_Q|·p^{m−1}.
    #[test]
    fn annihilator_counts_sum_over_all_b() {
        let q = qf(3, 3, &[(&[1], 2)]);
        let f = q.field();
        let total: u64 = f.elements().map(|b| q.annihilator_count(&b)).sum();
        assert_eq!(total, q.zero_set().len() as u64 * 9);
    }

    #[test]
    fn nb_distribution_frozen_tables() {
        // odd dimension, p=3, m=5
        let q = qf(3, 5, &[(&[1], 2)]);
        let d = q.nb_distribution().unwrap();
        let expect: BTreeMap<u64, u64> = [(80, 1), (26, 80), (32, 90), (20, 72)].into();
        assert_eq!(d, expect);
        assert_eq!(d.values().sum::<u64>(), 243);

        // even dimension, p=3, m=4, ε=−1
        let q = qf(3, 4, &[(&[1], 10)]);
        let d = q.nb_distribution().unwrap();
        let expect: BTreeMap<u64, u64> = [(20, 1), (8, 60), (2, 20)].into();
        assert_eq!(d, expect);
        assert_eq!(d.values().sum::<u64>(), 81);
    }

    #[test]
    fn nb_distribution_rejects_non_bent_input() {
        let q = qf(3, 3, &[]);
        assert!(matches!(
            q.nb_distribution(),
            Err(Error::TheoryViolation(_))
        ));
    }

    #[test]
    fn parseval_holds_exactly_on_small_fields() {
        // Sum the autocorrelation vectors over all λ; the aggregate must
        // collapse to the rational value p^{2m}.
        for q in [
            qf(3, 2, &[(&[1], 2)]),
            qf(3, 2, &[(&[1], 2), (&[1], 4)]),
            qf(3, 3, &[(&[0, 1], 4)]),
            qf(3, 2, &[(&[1], 8)]), // not even quadratic
        ] {
            let f = q.field();
            let p = f.p() as usize;
            let mut agg = vec![0u64; p];
            for lam in f.elements() {
                for (k, c) in q.walsh(&lam).autocorrelation().iter().enumerate() {
                    agg[k] += c;
                }
            }
            assert!(agg[1..].iter().all(|&c| c == agg[1]), "{:?}", q.terms());
            assert_eq!(agg[0] - agg[1], f.order() * f.order());
        }
    }

    #[test]
    fn planar_checks() {
        let f9 = make_field(3, 2).unwrap();
        assert!(is_planar(&f9, |x| f9.mul(x, x)));
        assert!(!is_planar(&f9, |x| x.clone()));
        let f27 = make_field(3, 3).unwrap();
        assert!(is_planar(&f27, |x| f27.mul(x, x)));
        // x^{10} − x^6 − x² on GF(3^5)
        let f = make_field(3, 5).unwrap();
        let one = f.one();
        let neg = f.neg(&one);
        let terms = vec![(one.clone(), 10), (neg.clone(), 6), (neg.clone(), 2)];
        assert!(is_planar(&f, |x| eval_field_poly(&f, &terms, x)));
    }

    #[test]
    fn from_terms_validates_inputs() {
        let f = make_field(3, 2).unwrap();
        let bad_elem = make_field(3, 3).unwrap().one();
        assert!(matches!(
            QFunction::from_terms(f.clone(), vec![(bad_elem, 2)]),
            Err(Error::BadElement { .. })
        ));
        assert!(matches!(
            QFunction::from_terms(f.clone(), vec![(f.one(), 0)]),
            Err(Error::BadExponent(0))
        ));
    }
}
