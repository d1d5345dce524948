//! Linear codes over F_p built from defining sets in GF(p^m).
//!
//! A defining set D = {d_1, …, d_n} of nonzero field elements defines the
//! code {(Tr(b·d_1), …, Tr(b·d_n)) : b ∈ GF(p^m)} of length n over the prime
//! field.  The sets of interest are zero sets of quadratic functions, whose
//! weight distributions have closed forms; this module computes the empirical
//! distribution exactly, cross-checks it against those closed forms, punctures
//! scalar-closed sets down to projective representatives, and evaluates the
//! Griesmer bound.  Every list is kept in discrete-log order so identical
//! inputs always produce byte-identical reports.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldRecord, FieldSpec, PrimeResidue};
use crate::linalg;
use crate::quadform::QFunction;

/// Whether a defining set is the full zero set or its projective puncturing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetFlag {
    Full,
    Punctured,
}

/// An ordered, duplicate-free set of nonzero field elements, optionally
/// remembering the quadratic function whose zero set it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    field: FieldSpec,
    elements: Vec<FieldElement>,
    flag: SetFlag,
    origin: Option<QFunction>,
}

/// The full defining set of a quadratic function: its nonzero zeros in
/// generator-power (discrete-log) order.
pub fn defining_set(q: &QFunction) -> DefiningSet {
    DefiningSet {
        field: q.field().clone(),
        elements: q.zero_set(),
        flag: SetFlag::Full,
        origin: Some(q.clone()),
    }
}

impl DefiningSet {
    /// Builds a defining set from explicit elements (no quadratic origin).
    /// Elements must be nonzero and distinct; they are re-sorted into
    /// discrete-log order.  A punctured set must also contain at most one
    /// representative per scalar orbit.
    pub fn from_elements(
        field: FieldSpec,
        elements: Vec<FieldElement>,
        flag: SetFlag,
    ) -> Result<DefiningSet> {
        let mut keyed = Vec::with_capacity(elements.len());
        for e in elements {
            if e.coeffs().len() != field.m() || e.coeffs().iter().any(|&c| c >= field.p()) {
                return Err(Error::BadElement {
                    coeffs: e.coeffs().to_vec(),
                    p: field.p(),
                    m: field.m(),
                });
            }
            if e.is_zero() {
                return Err(Error::BadDefiningSet(
                    "elements must be nonzero".to_string(),
                ));
            }
            let log = field.discrete_log(&e).expect("nonzero element has a log");
            keyed.push((log, e));
        }
        keyed.sort_by_key(|(log, _)| *log);
        if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::BadDefiningSet(
                "elements must be distinct".to_string(),
            ));
        }
        let elements: Vec<FieldElement> = keyed.into_iter().map(|(_, e)| e).collect();
        if flag == SetFlag::Punctured {
            let mut reps = BTreeSet::new();
            for e in &elements {
                if !reps.insert(scalar_canonical(&field, e)) {
                    return Err(Error::BadDefiningSet(
                        "punctured set holds two elements of the same scalar orbit".to_string(),
                    ));
                }
            }
        }
        Ok(DefiningSet {
            field,
            elements,
            flag,
            origin: None,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn flag(&self) -> SetFlag {
        self.flag
    }

    pub fn origin(&self) -> Option<&QFunction> {
        self.origin.as_ref()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The codeword (Tr(b·d_1), …, Tr(b·d_n)).
    pub fn codeword(&self, b: &FieldElement) -> Vec<PrimeResidue> {
        self.elements
            .iter()
            .map(|d| self.field.trace(&self.field.mul(b, d)))
            .collect()
    }

    /// Hamming weight of the codeword of b.
    pub fn weight_of(&self, b: &FieldElement) -> u64 {
        self.codeword(b).iter().filter(|&&x| x != 0).count() as u64
    }

    /// The m×n matrix of basis-element codewords: row i is the codeword of
    /// basis element β_i, so its row space over F_p is the whole code.
    fn trace_rows(&self) -> Vec<Vec<u64>> {
        (0..self.field.m())
            .map(|i| self.codeword(&self.field.basis(i)))
            .collect()
    }

    /// Dimension k of the code over F_p.
    pub fn dimension(&self) -> usize {
        linalg::rank(&self.trace_rows(), self.field.p())
    }

    /// Deterministic generator matrix: the reduced row-echelon form of the
    /// basis-codeword matrix, k rows of length n.
    pub fn generator_matrix(&self) -> Vec<Vec<u64>> {
        linalg::rref(&self.trace_rows(), self.field.p())
    }

    /// Exact weight distribution over *distinct* codewords, including the
    /// zero word (so the counts sum to p^k).  Each weight's tally over all
    /// p^m messages b must be divisible by the kernel size p^{m−k}; a
    /// failure of that invariant is raised, never rounded.
    pub fn weight_distribution(&self) -> Result<BTreeMap<u64, u64>> {
        let p = self.field.p();
        let m = self.field.m();
        let n = self.elements.len();
        let tau = self.trace_rows();
        let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
        for b in self.field.elements() {
            let coords = b.coeffs();
            let mut zeros = 0u64;
            for j in 0..n {
                let mut acc = 0u64;
                for i in 0..m {
                    acc += coords[i] * tau[i][j];
                }
                if acc % p == 0 {
                    zeros += 1;
                }
            }
            *tally.entry(n as u64 - zeros).or_insert(0) += 1;
        }
        let k = linalg::rank(&tau, p);
        let mut kernel = 1u64;
        for _ in 0..m - k {
            kernel *= p;
        }
        let mut dist = BTreeMap::new();
        for (w, count) in tally {
            if count % kernel != 0 {
                return Err(Error::TheoryViolation(format!(
                    "weight-{w} tally {count} is not a multiple of the kernel size {kernel}"
                )));
            }
            dist.insert(w, count / kernel);
        }
        Ok(dist)
    }

    /// Cross-checks the two ways of computing codeword weights for a set
    /// with a quadratic origin: direct evaluation against the
    /// zero-intersection identity wt(c_b) = |D| − N_b, for every b.
    pub fn verify_weight_paths(&self) -> Result<()> {
        let origin = self.origin.as_ref().ok_or_else(|| {
            Error::BadDefiningSet("weight-path cross-check needs a quadratic origin".to_string())
        })?;
        if self.flag != SetFlag::Full {
            return Err(Error::BadDefiningSet(
                "weight-path cross-check applies to the full zero set".to_string(),
            ));
        }
        let n = self.elements.len() as u64;
        for b in self.field.elements() {
            let direct = self.weight_of(&b);
            let via_counts = n - origin.annihilator_count(&b);
            if direct != via_counts {
                return Err(Error::TheoryViolation(format!(
                    "weight paths disagree at b = {:?}: direct {direct}, |D| - N_b {via_counts}",
                    b.coeffs()
                )));
            }
        }
        Ok(())
    }

    /// Collapses each scalar orbit {y·d : y ∈ F_p^*} to its canonical
    /// representative (the orbit member whose lowest-index nonzero
    /// coordinate is 1).  The set must be closed under nonzero scalars.
    pub fn puncture(&self) -> Result<DefiningSet> {
        if self.flag == SetFlag::Punctured {
            return Err(Error::BadDefiningSet(
                "set is already punctured".to_string(),
            ));
        }
        let p = self.field.p();
        let members: BTreeSet<&FieldElement> = self.elements.iter().collect();
        for d in &self.elements {
            for y in 2..p {
                if !members.contains(&self.field.scale(y, d)) {
                    return Err(Error::NotScalarClosed {
                        orbit_of: d.coeffs().to_vec(),
                    });
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut keyed = Vec::new();
        for d in &self.elements {
            let rep = scalar_canonical(&self.field, d);
            if seen.insert(rep.clone()) {
                let log = self
                    .field
                    .discrete_log(&rep)
                    .expect("nonzero element has a log");
                keyed.push((log, rep));
            }
        }
        keyed.sort_by_key(|(log, _)| *log);
        Ok(DefiningSet {
            field: self.field.clone(),
            elements: keyed.into_iter().map(|(_, e)| e).collect(),
            flag: SetFlag::Punctured,
            origin: self.origin.clone(),
        })
    }
}

/// The scalar-orbit representative: d scaled so its lowest-index nonzero
/// coordinate equals 1.
fn scalar_canonical(field: &FieldSpec, d: &FieldElement) -> FieldElement {
    let v = *d
        .coeffs()
        .iter()
        .find(|&&c| c != 0)
        .expect("defining-set elements are nonzero");
    let vinv = crate::field::mod_pow(v, field.p() - 2, field.p());
    field.scale(vinv, d)
}

/// Checks wt_full(c_b) = (p−1)·wt_punctured(c_b) for every message b.
pub fn verify_puncture_relation(full: &DefiningSet, punctured: &DefiningSet) -> Result<()> {
    if full.flag() != SetFlag::Full || punctured.flag() != SetFlag::Punctured {
        return Err(Error::BadDefiningSet(
            "relation check needs a full set and its puncturing".to_string(),
        ));
    }
    let p = full.field().p();
    for b in full.field().elements() {
        let wf = full.weight_of(&b);
        let wp = punctured.weight_of(&b);
        if wf != (p - 1) * wp {
            return Err(Error::TheoryViolation(format!(
                "puncture weight relation fails at b = {:?}: full {wf}, punctured {wp}",
                b.coeffs()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// closed-form weight tables

/// The closed-form weight distribution (nonzero weights only) of the code of
/// a bent function's zero set.  Odd m needs no ε; even m requires ε = ±1.
/// Zero-count rows and the zero-weight row are dropped, so the empty map for
/// (even m, ε = −1, m = 2) correctly describes the zero-length code.
pub fn theoretical_wd(
    p: u64,
    m: usize,
    epsilon: Option<i8>,
    flag: SetFlag,
) -> Result<BTreeMap<u64, u64>> {
    let rows: Vec<(i64, i64)> = if m % 2 == 1 {
        if m < 3 {
            return Err(Error::DegreeTooSmall { needs: 3, got: m });
        }
        let a = ipow(p, m - 1); // p^{m-1}
        let b = ipow(p, (m - 1) / 2);
        let base = ipow(p, m - 2);
        let step = ipow(p, (m - 3) / 2);
        let pm1 = p as i64 - 1;
        vec![
            (pm1 * (base - step), pm1 / 2 * (a + b)),
            (pm1 * base, a - 1),
            (pm1 * (base + step), pm1 / 2 * (a - b)),
        ]
    } else {
        let eps = match epsilon {
            Some(1) => 1i64,
            Some(-1) => -1i64,
            Some(other) => return Err(Error::BadEpsilon(other)),
            None => return Err(Error::BadEpsilon(0)),
        };
        let a = ipow(p, m - 1);
        let base = ipow(p, m - 2);
        let s = ipow(p, (m - 2) / 2);
        let pm1 = p as i64 - 1;
        vec![
            (pm1 * base, a + eps * pm1 * s - 1),
            (pm1 * (base + eps * s), pm1 * (a - eps * s)),
        ]
    };
    let mut table = BTreeMap::new();
    for (w, count) in rows {
        debug_assert!(w >= 0 && count >= 0, "weight tables are nonnegative");
        if w == 0 || count == 0 {
            continue;
        }
        let w = match flag {
            SetFlag::Full => w as u64,
            SetFlag::Punctured => {
                debug_assert_eq!(w % (p as i64 - 1), 0);
                (w / (p as i64 - 1)) as u64
            }
        };
        *table.entry(w).or_insert(0) += count as u64;
    }
    Ok(table)
}

fn ipow(p: u64, e: usize) -> i64 {
    let mut acc = 1i64;
    for _ in 0..e {
        acc *= p as i64;
    }
    acc
}

/// One differing row of a distribution comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRow {
    pub w: u64,
    pub expected: Option<u64>,
    pub actual: Option<u64>,
}

/// Outcome of checking an empirical distribution against a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryVerdict {
    Match,
    Mismatch { rows: Vec<MismatchRow> },
    NotApplicable,
}

/// Row-by-row comparison of two weight tables (nonzero weights).
pub fn compare_distributions(
    actual: &BTreeMap<u64, u64>,
    expected: &BTreeMap<u64, u64>,
) -> TheoryVerdict {
    let keys: BTreeSet<u64> = actual.keys().chain(expected.keys()).copied().collect();
    let rows: Vec<MismatchRow> = keys
        .into_iter()
        .filter(|w| actual.get(w) != expected.get(w))
        .map(|w| MismatchRow {
            w,
            expected: expected.get(&w).copied(),
            actual: actual.get(&w).copied(),
        })
        .collect();
    if rows.is_empty() {
        TheoryVerdict::Match
    } else {
        TheoryVerdict::Mismatch { rows }
    }
}

// ---------------------------------------------------------------------------
// Griesmer bound

/// Σ_{i=0}^{k−1} ⌈d / q^i⌉ — the minimum possible length of a [n, k, d]
/// code over F_q.
pub fn griesmer_bound(k: usize, d: u64, q: u64) -> Result<u64> {
    if k == 0 || d == 0 || q < 2 {
        return Err(Error::BoundDomain);
    }
    let mut sum = 0u64;
    let mut qi = 1u64;
    for _ in 0..k {
        sum += d.div_ceil(qi);
        qi = qi.saturating_mul(q);
    }
    Ok(sum)
}

/// Griesmer verdicts for one code: the bound itself, whether n meets it
/// exactly, and whether any larger d could fit this (n, k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GriesmerRecord {
    pub bound: u64,
    pub meets: bool,
    pub optimal_for_n: bool,
}

/// Evaluates the bound for an [n, k, d] code over F_q; a degenerate code
/// (k = 0 or d = 0) gets the zeroed record.
pub fn griesmer_record(n: u64, k: usize, d: u64, q: u64) -> Result<GriesmerRecord> {
    if k == 0 || d == 0 {
        return Ok(GriesmerRecord {
            bound: 0,
            meets: false,
            optimal_for_n: false,
        });
    }
    let bound = griesmer_bound(k, d, q)?;
    let next = griesmer_bound(k, d + 1, q)?;
    Ok(GriesmerRecord {
        bound,
        meets: bound == n,
        optimal_for_n: next > n,
    })
}

// ---------------------------------------------------------------------------
// reports

/// One weight-distribution row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub w: u64,
    pub count: u64,
}

/// Which named construction produced the code, with normalized parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub family: String,
    pub params: BTreeMap<String, String>,
}

/// The full result of building and checking one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub field: FieldRecord,
    pub family: Option<FamilyRecord>,
    pub n: u64,
    pub k: usize,
    pub d: u64,
    pub weights: Vec<WeightRow>,
    pub enumerator: String,
    pub epsilon: i8,
    pub epsilon_predicted: Option<i8>,
    pub epsilon_prediction_mismatch: bool,
    pub theory_verdict: TheoryVerdict,
    pub griesmer: GriesmerRecord,
}

/// Builds the report for one defining set: parameters, exact weight
/// distribution, classification-driven closed-form verdict, and Griesmer
/// record.  `epsilon_predicted` is the advisory closed-form ε (when one
/// exists); disagreement with the empirical ε sets the mismatch flag.
pub fn build_report(
    set: &DefiningSet,
    family: Option<FamilyRecord>,
    epsilon_predicted: Option<i8>,
) -> Result<CodeReport> {
    let field = set.field();
    let (p, m) = (field.p(), field.m());
    let dist = set.weight_distribution()?;
    let n = set.len() as u64;
    let k = set.dimension();

    let mut expected_words = 1u64;
    for _ in 0..k {
        expected_words *= p;
    }
    let total: u64 = dist.values().sum();
    if total != expected_words {
        return Err(Error::TheoryViolation(format!(
            "distinct codewords {total} != p^k = {expected_words}"
        )));
    }

    let nonzero: BTreeMap<u64, u64> = dist.iter().filter(|(&w, _)| w != 0).map(|(&w, &c)| (w, c)).collect();
    let d = nonzero.keys().next().copied().unwrap_or(0);

    let (epsilon, verdict) = match set.origin() {
        Some(q) => {
            let cls = q.classify()?;
            if cls.bent {
                let eps = if m % 2 == 0 { Some(cls.epsilon) } else { None };
                let theory = theoretical_wd(p, m, eps, set.flag())?;
                (cls.epsilon, compare_distributions(&nonzero, &theory))
            } else {
                (cls.epsilon, TheoryVerdict::NotApplicable)
            }
        }
        None => (0, TheoryVerdict::NotApplicable),
    };

    let mut enumerator = String::from("1");
    for (w, count) in &nonzero {
        enumerator.push_str(&format!(" + {count}z^{w}"));
    }
    let weights = dist
        .iter()
        .map(|(&w, &count)| WeightRow { w, count })
        .collect();
    let epsilon_prediction_mismatch = epsilon_predicted.is_some_and(|pr| pr != epsilon);

    Ok(CodeReport {
        field: FieldRecord::from(field),
        family,
        n,
        k,
        d,
        weights,
        enumerator,
        epsilon,
        epsilon_predicted,
        epsilon_prediction_mismatch,
        theory_verdict: verdict,
        griesmer: griesmer_record(n, k, d, p)?,
    })
}
