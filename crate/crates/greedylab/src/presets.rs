//! Explicitly constructed sequence-space presets and their witness
//! families, with built-in inequality certificates.
//!
//! The constructions:
//! - `build_xp`: max of sup norm and a weighted lp norm — 1-unconditional,
//!   with ‖1_{eps,A}‖ = max{1, w(A)^{1/p}}.
//! - `build_example_72`: max of a weighted l2 norm (weight n^{-1/2} ln(n+1)),
//!   a prefix functional with coefficients n^{-3/4}, and the sup norm — a
//!   normalized conditional basis that is quasi-greedy but whose
//!   conditionality ratio diverges.
//! - `build_intervals_74` / `build_example_74`: replaces the prefix
//!   functional by interval sums over a family with certified term sums
//!   growing past 1 — kills quasi-greediness while retaining semi-greedy
//!   behavior; witnesses z_m split each interval into a positive and a
//!   negative block at the balance index j_m.
//! - `build_example_76`: the Schauder majorant wrap of the interval space,
//!   with greedy prefix-balancing permutations recorded.
//! - `direct_sum` / `build_corollary_78`: interleaved direct sums with a
//!   combined weight, pairing an unconditional weighted space with one of
//!   the conditional components.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::index::{Index, MAX_INDEX};
use crate::norms::NormSpec;
use crate::rules::{interval_sum_certified, CoefficientRule, Enclosure, MonotoneRule, DIRECT_SUM_LIMIT};
use crate::sparse::SparseVector;
use crate::weights::Weight;

/// A named, fully constructed space: norm spec + attached weight + the
/// construction parameters that produced it.
#[derive(Debug, Clone)]
pub struct SpacePreset {
    pub name: String,
    pub spec: NormSpec,
    pub weight: Weight,
    pub metadata: Value,
}

/// max{‖.‖_inf, (sum w_n |a_n|^p)^{1/p}} — requires p > 1.
pub fn build_xp(p: f64, w: Weight) -> Result<SpacePreset> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::Contract(format!("build_xp requires p in (1, inf), got {p}")));
    }
    w.validate()?;
    Ok(SpacePreset {
        name: "xp".into(),
        spec: NormSpec::MaxOf(vec![
            NormSpec::SupNorm,
            NormSpec::WeightedLp { p, weight: w.clone() },
        ]),
        metadata: json!({"p": p}),
        weight: w,
    })
}

/// The conditional quasi-greedy space: max of the reweighted l2 norm, the
/// n^{-3/4} prefix functional, and the sup norm, carrying the
/// n^{-1/2} ln(n+1) weight.
pub fn build_example_72() -> SpacePreset {
    SpacePreset {
        name: "ex72".into(),
        spec: NormSpec::MaxOf(vec![
            NormSpec::WeightedLp { p: 2.0, weight: Weight::FormulaW1 },
            NormSpec::Prefix { rule: CoefficientRule::InvPow34 },
            NormSpec::SupNorm,
        ]),
        weight: Weight::FormulaW1,
        metadata: json!({}),
    }
}

/// The conditionality witnesses: y_m with coefficients n^{-1/4} ln^{-1}(n+1)
/// on 1..=m, and z_m the alternating-sign version.
pub fn example72_witnesses(m: Index) -> (SparseVector, SparseVector) {
    assert!(m >= 1);
    let coeff = |n: Index| -> f64 {
        let x = n as f64;
        x.powf(-0.25) / (x + 1.0).ln()
    };
    let y = SparseVector::from_entries((1..=m).map(|n| (n, coeff(n))));
    let z = SparseVector::from_entries((1..=m).map(|n| {
        let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
        (n, sgn * coeff(n))
    }));
    (y, z)
}

/// The conditionality ratio r(m) = ‖y_m‖ / ‖z_m‖.
pub fn example72_conditionality_ratio(m: Index) -> f64 {
    let spec = build_example_72().spec;
    let (y, z) = example72_witnesses(m);
    spec.eval(&y) / spec.eval(&z)
}

/// An increasing family of disjoint intervals with certified sums of
/// n^{-1} ln^{-1}(n+1), each sum > 1 and strictly increasing.
#[derive(Debug, Clone)]
pub struct IntervalFamily {
    pub intervals: Vec<(Index, Index)>,
    pub sums: Vec<Enclosure>,
}

impl IntervalFamily {
    pub fn validate(&self) -> Result<()> {
        if self.intervals.len() != self.sums.len() {
            return Err(Error::Contract("intervals/sums length mismatch".into()));
        }
        let mut prev_hi_sum = 1.0f64;
        let mut prev_end: Index = 0;
        for (&(a, b), s) in self.intervals.iter().zip(&self.sums) {
            if a <= prev_end || a > b {
                return Err(Error::Contract("intervals must be increasing and disjoint".into()));
            }
            if s.lo <= prev_hi_sum {
                return Err(Error::Contract(
                    "certified sums must exceed 1 and be strictly increasing".into(),
                ));
            }
            prev_hi_sum = s.hi;
            prev_end = b;
        }
        Ok(())
    }

    /// Whether any interval contains index 1 (whose single term
    /// 1/ln 2 ~ 1.44 already exceeds 1, which breaks prefix-balancing
    /// bounds downstream; the default construction starts at 2).
    pub fn contains_index_one(&self) -> bool {
        self.intervals.first().is_some_and(|&(a, _)| a == 1)
    }
}

/// Default target sums for the interval construction.
pub const DEFAULT_TARGET_SUMS: [f64; 3] = [1.2, 1.6, 2.0];

/// Builds the interval family by walking endpoints until the certified sum
/// enclosure's lower bound exceeds each target (and the previous interval's
/// upper bound, keeping the sums strictly increasing). Endpoints grow
/// double-exponentially; running past the index range is a capacity error.
pub fn build_intervals_74(count: usize, targets: Option<&[f64]>) -> Result<IntervalFamily> {
    let defaults = DEFAULT_TARGET_SUMS;
    let targets = targets.unwrap_or(&defaults);
    if count > targets.len() {
        return Err(Error::Capacity(format!(
            "requested {count} intervals but only {} target sums; endpoints past the third \
             default target approach the index range limit",
            targets.len()
        )));
    }
    let mut intervals = Vec::new();
    let mut sums: Vec<Enclosure> = Vec::new();
    let mut start: Index = 2;
    for (k, &target) in targets.iter().take(count).enumerate() {
        if target <= 1.0 {
            return Err(Error::Contract(format!("target sums must exceed 1, got {target}")));
        }
        let need = if k == 0 { target } else { target.max(sums[k - 1].hi) };
        // Exponential search for an endpoint whose certified lower bound
        // clears the requirement.
        let mut b = start;
        loop {
            let e = interval_sum_certified(MonotoneRule::InvNLog, start, b)?;
            if e.lo > need {
                break;
            }
            if b > MAX_INDEX / 2 {
                return Err(Error::Capacity(
                    "interval endpoint would exceed the 127-bit index range".into(),
                ));
            }
            b = (b * 2).max(b + 1);
        }
        // Binary search the smallest clearing endpoint in (start, b].
        let mut lo_b = start;
        let mut hi_b = b;
        while lo_b + 1 < hi_b {
            let mid = lo_b + (hi_b - lo_b) / 2;
            let e = interval_sum_certified(MonotoneRule::InvNLog, start, mid)?;
            if e.lo > need {
                hi_b = mid;
            } else {
                lo_b = mid;
            }
        }
        let e = interval_sum_certified(MonotoneRule::InvNLog, start, hi_b)?;
        if e.lo <= need {
            return Err(Error::Capacity("endpoint search failed to clear its target".into()));
        }
        intervals.push((start, hi_b));
        sums.push(e);
        start = hi_b + 1;
    }
    let fam = IntervalFamily { intervals, sums };
    fam.validate()?;
    Ok(fam)
}

/// The interval-functional space over a constructed family: max of the
/// reweighted l2 norm, interval sums with coefficients n^{-3/4}, and the
/// sup norm.
pub fn build_example_74(fam: &IntervalFamily) -> SpacePreset {
    SpacePreset {
        name: "ex74".into(),
        spec: NormSpec::MaxOf(vec![
            NormSpec::WeightedLp { p: 2.0, weight: Weight::FormulaW1 },
            NormSpec::Intervals {
                intervals: fam.intervals.clone(),
                rule: CoefficientRule::InvPow34,
            },
            NormSpec::SupNorm,
        ]),
        weight: Weight::FormulaW1,
        metadata: json!({
            "intervals": fam.intervals.iter()
                .map(|&(a, b)| json!([a.to_string(), b.to_string()]))
                .collect::<Vec<_>>(),
        }),
    }
}

/// One inequality record of a witness certificate: asserts lhs <= rhs.
#[derive(Debug, Clone)]
pub struct Cert {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub passed: bool,
}

impl Cert {
    fn le(name: &str, lhs: f64, rhs: f64) -> Self {
        let tol = 1e-12 * rhs.abs().max(1.0);
        Cert { name: name.into(), lhs, rhs, passed: lhs <= rhs + tol }
    }
}

/// The witness z_m for one interval, explicit or (for intervals too long to
/// enumerate) symbolic with certified aggregates only.
#[derive(Debug, Clone)]
pub enum ZmForm {
    Explicit(SparseVector),
    Symbolic,
}

#[derive(Debug, Clone)]
pub struct Example74Witness {
    /// 0-based interval number within the family.
    pub m: usize,
    pub interval: (Index, Index),
    /// Last index of the positive block E_m (the balance split).
    pub j_m: Index,
    /// Certified sum S_m of n^{-1} ln^{-1}(n+1) over the interval.
    pub s_m: Enclosure,
    /// Certified sums over the positive block and the negative block.
    pub prefix: Enclosure,
    pub suffix: Enclosure,
    pub form: ZmForm,
    pub certs: Vec<Cert>,
}

impl Example74Witness {
    pub fn all_certs_pass(&self) -> bool {
        self.certs.iter().all(|c| c.passed)
    }

    /// Certified lower bound on the quasi-greedy failure ratio
    /// ‖P_{E_m}(z_m)‖ / ‖z_m‖.
    pub fn ratio_lower_bound(&self) -> f64 {
        let z_upper = self.s_m.hi.sqrt().max(1.0);
        self.prefix.lo / z_upper
    }
}

/// Builds z_m for the m-th interval (0-based): coefficients
/// n^{-1/4} ln^{-1}(n+1), positive up to the balance index j_m, negative
/// after, together with its inequality certificates.
pub fn example74_zm(fam: &IntervalFamily, m: usize) -> Result<Example74Witness> {
    fam.validate()?;
    let &(a, b) = fam
        .intervals
        .get(m)
        .ok_or_else(|| Error::Contract(format!("family has no interval {m}")))?;
    let s_m = fam.sums[m];
    let len = b - a + 1;
    let term = |n: Index| -> f64 {
        let x = n as f64;
        1.0 / (x * (x + 1.0).ln())
    };
    let zcoeff = |n: Index| -> f64 {
        let x = n as f64;
        x.powf(-0.25) / (x + 1.0).ln()
    };

    if len <= DIRECT_SUM_LIMIT {
        // Explicit: prefix-scan for the balance index, then evaluate every
        // certificate directly on the constructed vector.
        let total: f64 = {
            let mut s = 0.0;
            let mut n = b;
            loop {
                s += term(n);
                if n == a {
                    break;
                }
                n -= 1;
            }
            s
        };
        let mut pref = 0.0;
        let mut j_m = a;
        for n in a..=b {
            pref += term(n);
            j_m = n;
            // Smallest split where the tail no longer exceeds the head.
            if total - pref <= pref {
                break;
            }
        }
        let prefix: f64 = (a..=j_m).map(term).sum();
        let suffix = total - prefix;
        let z = SparseVector::from_entries((a..=b).map(|n| {
            let sgn = if n <= j_m { 1.0 } else { -1.0 };
            (n, sgn * zcoeff(n))
        }));
        let spec = build_example_74(fam).spec;
        let e_m: std::collections::BTreeSet<Index> = (a..=j_m).collect();
        let z_norm = spec.eval(&z);
        let proj_norm = spec.eval(&z.restrict(&e_m));
        let diamond = NormSpec::WeightedLp { p: 2.0, weight: Weight::FormulaW1 }.eval(&z);
        let interval_norm = NormSpec::Intervals {
            intervals: fam.intervals.clone(),
            rule: CoefficientRule::InvPow34,
        }
        .eval(&z);

        let certs = vec![
            Cert::le("split_tail_le_head", suffix, prefix),
            Cert::le("split_head_lt_1_plus_tail", prefix, 1.0 + suffix),
            Cert::le("sup_norm_le_1", z.sup_norm(), 1.0),
            Cert::le("interval_norm_le_1", interval_norm, 1.0),
            Cert::le("diamond_ge_sqrt_s", s_m.lo.sqrt(), diamond),
            Cert::le("diamond_le_sqrt_s", diamond, s_m.hi.sqrt()),
            Cert::le("projection_ge_half_s", s_m.hi / 2.0, proj_norm),
            Cert::le(
                "ratio_ge_target",
                s_m.hi / (2.0 * (2.0 + s_m.hi.sqrt())),
                proj_norm / z_norm,
            ),
        ];
        Ok(Example74Witness {
            m,
            interval: (a, b),
            j_m,
            s_m,
            prefix: Enclosure::point(prefix),
            suffix: Enclosure::point(suffix),
            form: ZmForm::Explicit(z),
            certs,
        })
    } else {
        // Symbolic: binary-search a split where the certified prefix
        // enclosure dominates both the certified suffix enclosure and half
        // of the certified total (so the downstream inequalities hold with
        // the enclosure widths already absorbed). Terms out here are many
        // orders of magnitude smaller than the widths, so the split lands
        // within a vanishing neighborhood of the exact balance index.
        let mut lo = a;
        let mut hi = b - 1;
        let split_sums = |j: Index| -> Result<(Enclosure, Enclosure)> {
            let p = interval_sum_certified(MonotoneRule::InvNLog, a, j)?;
            let s = interval_sum_certified(MonotoneRule::InvNLog, j + 1, b)?;
            Ok((p, s))
        };
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let (p, s) = split_sums(mid)?;
            if p.lo >= s.hi.max(s_m.hi / 2.0) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let j_m = lo;
        let (prefix, suffix) = split_sums(j_m)?;
        // Certified component values: the sup coefficient is the first
        // term's; the interval-functional value is |prefix - suffix|,
        // bounded via the enclosures; the diamond value is exactly sqrt(S)
        // (the squared coefficients recombine into the very sum S_m).
        let sup_val = zcoeff(a);
        let interval_hi = (prefix.hi - suffix.lo).max(suffix.hi - prefix.lo).max(0.0);
        let certs = vec![
            Cert::le("split_tail_le_head", suffix.hi, prefix.lo),
            Cert::le("split_head_lt_1_plus_tail", prefix.hi, 1.0 + suffix.lo),
            Cert::le("sup_norm_le_1", sup_val, 1.0),
            Cert::le("interval_norm_le_1", interval_hi, 1.0),
            Cert::le("diamond_ge_sqrt_s", s_m.lo.sqrt(), s_m.hi.sqrt()),
            Cert::le("diamond_le_sqrt_s", s_m.lo.sqrt(), s_m.hi.sqrt()),
            Cert::le("projection_ge_half_s", s_m.hi / 2.0, prefix.lo),
            Cert::le(
                "ratio_ge_target",
                s_m.hi / (2.0 * (2.0 + s_m.hi.sqrt())),
                prefix.lo / s_m.hi.sqrt().max(1.0),
            ),
        ];
        Ok(Example74Witness {
            m,
            interval: (a, b),
            j_m,
            s_m,
            prefix,
            suffix,
            form: ZmForm::Symbolic,
            certs,
        })
    }
}

/// Greedy prefix balancing: append an unused positive term whenever the
/// running sum is <= 0, otherwise an unused negative term (falling back to
/// whatever remains). Returns the permutation (indices into the input) and
/// the honestly achieved max prefix magnitude.
pub fn rearrange_prefix_balanced(terms: &[f64]) -> (Vec<usize>, f64) {
    let positives: Vec<usize> = (0..terms.len()).filter(|&i| terms[i] >= 0.0).collect();
    let negatives: Vec<usize> = (0..terms.len()).filter(|&i| terms[i] < 0.0).collect();
    let (mut pi, mut ni) = (0usize, 0usize);
    let mut perm = Vec::with_capacity(terms.len());
    let mut sum = 0.0f64;
    let mut bound = 0.0f64;
    while perm.len() < terms.len() {
        let idx = if (sum <= 0.0 && pi < positives.len()) || ni >= negatives.len() {
            let i = positives[pi];
            pi += 1;
            i
        } else {
            let i = negatives[ni];
            ni += 1;
            i
        };
        perm.push(idx);
        sum += terms[idx];
        bound = bound.max(sum.abs());
    }
    (perm, bound)
}

/// Wraps a preset's norm in the interval-restriction majorant, which makes
/// the canonical basis a monotone Schauder basis without changing unit-
/// vector norms.
pub fn schauder_majorant(preset: &SpacePreset) -> SpacePreset {
    SpacePreset {
        name: format!("schauder({})", preset.name),
        spec: NormSpec::SchauderMajorant { inner: Box::new(preset.spec.clone()) },
        weight: preset.weight.clone(),
        metadata: json!({"inner": preset.metadata.clone(), "inner_name": preset.name}),
    }
}

/// The Schauder-majorant wrap of the interval space, with the greedy
/// balancing permutations of each explicit interval's terms recorded in the
/// metadata (achieved bounds reported honestly; downstream inequality
/// checks use twice the achieved bound).
pub fn build_example_76(fam: &IntervalFamily) -> Result<SpacePreset> {
    fam.validate()?;
    let inner = build_example_74(fam);
    let mut balancing = Vec::new();
    for m in 0..fam.intervals.len() {
        let w = example74_zm(fam, m)?;
        match &w.form {
            ZmForm::Explicit(z) => {
                let terms: Vec<f64> = z
                    .iter()
                    .map(|(n, c)| (n as f64).powf(-0.75) * c)
                    .collect();
                let (_, bound) = rearrange_prefix_balanced(&terms);
                balancing.push(json!({
                    "interval": m,
                    "achieved_bound": crate::json::real_to_string(bound),
                }));
            }
            ZmForm::Symbolic => {
                balancing.push(json!({"interval": m, "achieved_bound": null}));
            }
        }
    }
    let mut preset = schauder_majorant(&inner);
    preset.name = "ex76".into();
    preset.metadata = json!({
        "inner": inner.metadata,
        "balancing": balancing,
        "contains_index_one": fam.contains_index_one(),
    });
    Ok(preset)
}

/// Interleaved direct sum: odd indices feed the left space, even the right,
/// with the combined interleaved weight.
pub fn direct_sum(left: &SpacePreset, right: &SpacePreset) -> SpacePreset {
    SpacePreset {
        name: "sum".into(),
        spec: NormSpec::Interleave {
            left: Box::new(left.spec.clone()),
            right: Box::new(right.spec.clone()),
        },
        weight: Weight::Combined(Box::new(left.weight.clone()), Box::new(right.weight.clone())),
        metadata: json!({
            "left": {"name": left.name, "metadata": left.metadata},
            "right": {"name": right.name, "metadata": right.metadata},
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary78Variant {
    /// Unconditional weighted component + the quasi-greedy conditional space.
    AlmostGreedy,
    /// ... + the Schauder-majorant interval space.
    SemiNotQgSchauder,
    /// ... + the raw interval space.
    SemiNotSchauder,
}

impl Corollary78Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "almost_greedy" => Ok(Self::AlmostGreedy),
            "semi_not_qg_schauder" => Ok(Self::SemiNotQgSchauder),
            "semi_not_schauder" => Ok(Self::SemiNotSchauder),
            _ => Err(Error::Contract(format!("unknown variant {s:?}"))),
        }
    }
}

/// The combined constructions: an interleaved sum of the unconditional
/// weighted space (its weight must tend to zero) with a conditional
/// component chosen by variant.
pub fn build_corollary_78(variant: Corollary78Variant, p: f64, w_c0: Weight) -> Result<SpacePreset> {
    if !w_c0.tends_to_zero() {
        return Err(Error::Contract(
            "the first component's weight must tend to zero (by declared kind)".into(),
        ));
    }
    let left = build_xp(p, w_c0)?;
    let right = match variant {
        Corollary78Variant::AlmostGreedy => build_example_72(),
        Corollary78Variant::SemiNotQgSchauder => {
            build_example_76(&build_intervals_74(3, None)?)?
        }
        Corollary78Variant::SemiNotSchauder => build_example_74(&build_intervals_74(3, None)?),
    };
    let mut preset = direct_sum(&left, &right);
    preset.name = format!(
        "cor78:{}",
        match variant {
            Corollary78Variant::AlmostGreedy => "almost_greedy",
            Corollary78Variant::SemiNotQgSchauder => "semi_not_qg_schauder",
            Corollary78Variant::SemiNotSchauder => "semi_not_schauder",
        }
    );
    Ok(preset)
}

/// Resolves a preset by CLI name: "xp", "ex72", "ex74", "ex76", "sum",
/// "cor78:<variant>".
pub fn preset_by_name(name: &str) -> Result<SpacePreset> {
    match name {
        "xp" => build_xp(2.0, Weight::FormulaW1),
        "ex72" => Ok(build_example_72()),
        "ex74" => Ok(build_example_74(&build_intervals_74(3, None)?)),
        "ex76" => build_example_76(&build_intervals_74(3, None)?),
        "sum" => {
            let left = build_xp(2.0, Weight::FormulaW1)?;
            Ok(direct_sum(&left, &build_example_72()))
        }
        other => {
            if let Some(v) = other.strip_prefix("cor78:") {
                build_corollary_78(Corollary78Variant::parse(v)?, 2.0, Weight::FormulaW1)
            } else {
                Err(Error::Contract(format!("unknown preset {name:?}")))
            }
        }
    }
}
