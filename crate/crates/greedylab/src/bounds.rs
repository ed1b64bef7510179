//! Exact evaluation of the closed-form constant bounds.
//!
//! Each formula tag names one displayed bound; inputs are passed by name and
//! every referenced input must be present and positive (s, t additionally in
//! (0, 1]). Evaluation is plain binary64 arithmetic — a pure function, so
//! equal inputs give bitwise-equal outputs.
//!
//! Input names used across formulas:
//!   c      — the property constant C of the hypothesis
//!   m_fs   — the separation constant M (always user-supplied, never
//!            estimated)
//!   s, t   — weakness parameters in (0, 1]
//!   lambda, lambda_prime — basis constants
//!   kappa  — scalar-field constant (1 for real scalars)
//!   inf_w_inv — sup of 1/w_j, i.e. the reciprocal of the weight's infimum
//!   k      — a previously computed constant fed forward (e.g. the K of the
//!            two-stage bound)
//!   l, l_m, l_2m, l_m1, l_2 — lower Chebyshevian Lebesgue values at the
//!            cardinalities the formula references (m, 2m, m-1, 2)
//!   p_m    — the running max p_m of the alternative-form corollary
//!   c1, c2, c3 — the three constants of the composition bound

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// All supported formula tags.
pub const FORMULA_TAGS: &[&str] = &[
    "prop39_C1",
    "thm314_i",
    "thm314_ii",
    "thm315_i",
    "thm315_ii",
    "thm53_K",
    "thm53_qg",
    "prop62",
    "prop66_i",
    "prop66_ii",
    "prop66_iii",
    "prop611_i",
    "prop611_ii",
    "prop611_iii",
    "cor612_i",
    "cor612_ii",
    "cor612_iii",
    "remark37",
    "thm321",
];

/// Evaluates the named closed-form bound on the supplied inputs.
pub fn bound_calculator(formula: &str, inputs: &BTreeMap<String, f64>) -> Result<f64> {
    let get = |name: &str| -> Result<f64> {
        let v = *inputs.get(name).ok_or_else(|| {
            Error::Contract(format!("formula {formula:?} is missing input {name:?}"))
        })?;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Contract(format!(
                "input {name:?} must be positive and finite, got {v}"
            )));
        }
        if (name == "s" || name == "t") && v > 1.0 {
            return Err(Error::Contract(format!("input {name:?} must be in (0, 1], got {v}")));
        }
        Ok(v)
    };

    let v = match formula {
        // 3 C s^{-1} (1 + lambda lambda') lambda max{2 inf_j w_j^{-1}, 1}
        "prop39_C1" => {
            let (c, s) = (get("c")?, get("s")?);
            let (la, lp) = (get("lambda")?, get("lambda_prime")?);
            let wi = get("inf_w_inv")?;
            3.0 * c / s * (1.0 + la * lp) * la * (2.0 * wi).max(1.0)
        }
        // C M max{1 + 8 t^{-1} s^{-1} lambda lambda', 1 + 6 C t^{-1} s^{-3}}
        "thm314_i" => {
            let (c, m) = (get("c")?, get("m_fs")?);
            let (s, t) = (get("s")?, get("t")?);
            let (la, lp) = (get("lambda")?, get("lambda_prime")?);
            c * m * (1.0 + 8.0 / t / s * la * lp).max(1.0 + 6.0 * c / t / s.powi(3))
        }
        // 2 s^{-1} C M max{lambda lambda', 2 s^{-2} C}
        "thm314_ii" => {
            let (c, m, s) = (get("c")?, get("m_fs")?, get("s")?);
            let (la, lp) = (get("lambda")?, get("lambda_prime")?);
            2.0 / s * c * m * (la * lp).max(2.0 / (s * s) * c)
        }
        // C M (1 + 6 C t^{-1} s^{-3})
        "thm315_i" => {
            let (c, m) = (get("c")?, get("m_fs")?);
            let (s, t) = (get("s")?, get("t")?);
            c * m * (1.0 + 6.0 * c / t / s.powi(3))
        }
        // 4 s^{-3} C^2 M
        "thm315_ii" => {
            let (c, m, s) = (get("c")?, get("m_fs")?, get("s")?);
            4.0 / s.powi(3) * c * c * m
        }
        // C s^{-1} max{2 C s^{-1}, lambda lambda'}
        "thm53_K" => {
            let (c, s) = (get("c")?, get("s")?);
            let (la, lp) = (get("lambda")?, get("lambda_prime")?);
            c / s * (2.0 * c / s).max(la * lp)
        }
        // (1 + t^{-1} s^{-2} K)(1 + C)
        "thm53_qg" => {
            let (c, s, t, k) = (get("c")?, get("s")?, get("t")?, get("k")?);
            (1.0 + k / t / (s * s)) * (1.0 + c)
        }
        // M L (1 + 2 L t^{-1} s^{-2}), L at cardinality 2 floor((m+1)/2)
        "prop62" => {
            let (m, l) = (get("m_fs")?, get("l")?);
            let (s, t) = (get("s")?, get("t")?);
            m * l * (1.0 + 2.0 * l / t / (s * s))
        }
        // M L(2m) (1 + 2 (M+1) L(m) t^{-1} s^{-2})
        "prop66_i" => {
            let (m, l2m, lm) = (get("m_fs")?, get("l_2m")?, get("l_m")?);
            let (s, t) = (get("s")?, get("t")?);
            m * l2m * (1.0 + 2.0 * (m + 1.0) * lm / t / (s * s))
        }
        // even m: M L(2m) (1 + 4 L(m) t^{-1} s^{-2})
        "prop66_ii" => {
            let (m, l2m, lm) = (get("m_fs")?, get("l_2m")?, get("l_m")?);
            let (s, t) = (get("s")?, get("t")?);
            m * l2m * (1.0 + 4.0 * lm / t / (s * s))
        }
        // odd m > 1: M L(2m) (1 + (4 L(m-1) + 2 L(2)) t^{-1} s^{-2})
        "prop66_iii" => {
            let (m, l2m) = (get("m_fs")?, get("l_2m")?);
            let (lm1, l2) = (get("l_m1")?, get("l_2")?);
            let (s, t) = (get("s")?, get("t")?);
            m * l2m * (1.0 + (4.0 * lm1 + 2.0 * l2) / t / (s * s))
        }
        // L(m)^2 M (1 + M) s^{-2}
        "prop611_i" => {
            let (m, lm, s) = (get("m_fs")?, get("l_m")?, get("s")?);
            lm * lm * m * (1.0 + m) / (s * s)
        }
        // even m: 2 L(m)^2 M s^{-2}
        "prop611_ii" => {
            let (m, lm, s) = (get("m_fs")?, get("l_m")?, get("s")?);
            2.0 * lm * lm * m / (s * s)
        }
        // odd m: 2 L(m-1)^2 M s^{-2} + lambda lambda'
        "prop611_iii" => {
            let (m, lm1, s) = (get("m_fs")?, get("l_m1")?, get("s")?);
            let (la, lp) = (get("lambda")?, get("lambda_prime")?);
            2.0 * lm1 * lm1 * m / (s * s) + la * lp
        }
        // M p_m + the matching second term of the three variants
        "cor612_i" => {
            let (m, pm, lm, s) = (get("m_fs")?, get("p_m")?, get("l_m")?, get("s")?);
            m * pm + lm * lm * m * (1.0 + m) / (s * s)
        }
        "cor612_ii" => {
            let (m, pm, lm, s) = (get("m_fs")?, get("p_m")?, get("l_m")?, get("s")?);
            m * pm + 2.0 * lm * lm * m / (s * s)
        }
        "cor612_iii" => {
            let (m, pm, lm1, s) = (get("m_fs")?, get("p_m")?, get("l_m1")?, get("s")?);
            let (la, lp) = (get("lambda")?, get("lambda_prime")?);
            m * pm + 2.0 * lm1 * lm1 * m / (s * s) + la * lp
        }
        // 2 kappa C^2
        "remark37" => {
            let (c, kap) = (get("c")?, get("kappa")?);
            2.0 * kap * c * c
        }
        // C1 (1 + C2 C3 t^{-1} s^{-1})
        "thm321" => {
            let (c1, c2, c3) = (get("c1")?, get("c2")?, get("c3")?);
            let (s, t) = (get("s")?, get("t")?);
            c1 * (1.0 + c2 * c3 / t / s)
        }
        _ => return Err(Error::Contract(format!("unknown formula tag {formula:?}"))),
    };
    Ok(v)
}
