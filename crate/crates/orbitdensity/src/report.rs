//! Report serialization.
//!
//! Exact rationals are written as `"p/q"` strings and metric values as dyadic
//! strings (`"2^-3"`, or `"<=2^-7"` for an upper bound). JSON objects use
//! sorted keys, so identical reports always serialize to identical bytes.
//! TSV output adds decimal columns, rounded half-even to six places and
//! marked approximate.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use orbitdensity_core::attraction::{CoACover, CoverEntry};
use orbitdensity_core::chaos::{ChaosVerdict, FChaoticWitness};
use orbitdensity_core::density::{DensityReport, Envelope};
use orbitdensity_core::shift::{MetricValue, Word};
use orbitdensity_core::Rational;
use serde_json::{json, Value};

use crate::spec::parse_rational;

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `p/q` rounded half-even to six decimal places.
pub fn decimal6(r: &Rational) -> String {
    let scaled = r.numer() * BigInt::from(1_000_000u32);
    let den = r.denom();
    let (mut q, rem) = scaled.abs().div_rem(den);
    let twice = rem * 2u32;
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1u32;
    }
    let sign = if r.numer().sign() == Sign::Minus && !q.is_zero() { "-" } else { "" };
    let (int, frac) = q.div_rem(&BigInt::from(1_000_000u32));
    format!("{sign}{int}.{frac:06}")
}

pub fn metric(m: &MetricValue) -> String {
    m.to_string()
}

pub fn parse_metric(text: &str) -> Result<MetricValue, String> {
    let (upper, rest) = match text.strip_prefix("<=") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let e: u32 = rest
        .strip_prefix("2^-")
        .and_then(|e| e.parse().ok())
        .ok_or_else(|| format!("{text:?} is not a dyadic metric value"))?;
    Ok(if upper { MetricValue::upper_bound(e) } else { MetricValue::exact(e) })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn density_json(r: &DensityReport) -> Value {
    json!({
        "ratios": r.ratios.iter().map(|(n, q)| json!([n, rational(q)])).collect::<Vec<_>>(),
        "headline_upper": rational(&r.headline_upper),
        "headline_lower": rational(&r.headline_lower),
        "headline_window": [r.headline_window.0, r.headline_window.1],
        "envelope": r.envelope.iter().map(|e| json!([e.from, rational(&e.upper), rational(&e.lower)])).collect::<Vec<_>>(),
        "folner": r.folner_label,
        "set": r.set_description,
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key).ok_or_else(|| format!("missing field {key:?}"))
}

fn rat_field(v: &Value, key: &str) -> Result<Rational, String> {
    parse_rational(field(v, key)?.as_str().ok_or_else(|| format!("{key:?} is not a string"))?)
}

fn rat_at(v: &Value) -> Result<Rational, String> {
    parse_rational(v.as_str().ok_or("expected a rational string")?)
}

fn u64_at(v: &Value) -> Result<u64, String> {
    v.as_u64().ok_or_else(|| "expected a nonnegative integer".to_string())
}

fn str_field(v: &Value, key: &str) -> Result<String, String> {
    Ok(field(v, key)?.as_str().ok_or_else(|| format!("{key:?} is not a string"))?.to_string())
}

fn rows<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, String> {
    field(v, key)?.as_array().ok_or_else(|| format!("{key:?} is not an array"))
}

pub fn density_from_json(v: &Value) -> Result<DensityReport, String> {
    let ratios = rows(v, "ratios")?
        .iter()
        .map(|row| Ok((u64_at(&row[0])?, rat_at(&row[1])?)))
        .collect::<Result<Vec<_>, String>>()?;
    let window = rows(v, "headline_window")?;
    let envelope = rows(v, "envelope")?
        .iter()
        .map(|row| Ok(Envelope { from: u64_at(&row[0])?, upper: rat_at(&row[1])?, lower: rat_at(&row[2])? }))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(DensityReport {
        ratios,
        headline_upper: rat_field(v, "headline_upper")?,
        headline_lower: rat_field(v, "headline_lower")?,
        headline_window: (u64_at(&window[0])?, u64_at(&window[1])?),
        envelope,
        folner_label: str_field(v, "folner")?,
        set_description: str_field(v, "set")?,
    })
}

pub fn density_tsv(r: &DensityReport) -> String {
    let mut out = format!("# set\t{}\n# folner\t{}\n", r.set_description, r.folner_label);
    out += &format!(
        "# headline [{}, {}]\tupper {}\tlower {}\n",
        r.headline_window.0,
        r.headline_window.1,
        rational(&r.headline_upper),
        rational(&r.headline_lower)
    );
    out += "n\tratio\tratio_approx\n";
    for (n, q) in &r.ratios {
        out += &format!("{n}\t{}\t{}\n", rational(q), decimal6(q));
    }
    out
}

pub fn cover_json(c: &CoACover) -> Value {
    json!({
        "k": c.resolution,
        "tol": rational(&c.tol),
        "horizon": c.horizon,
        "headline_fraction": rational(&c.headline_fraction),
        "kept": c.kept.iter().map(|e| json!({
            "word": e.word.to_string(),
            "upper": rational(&e.upper),
            "lower": rational(&e.lower),
        })).collect::<Vec<_>>(),
        "union_sojourn": density_json(&c.union_sojourn),
        "tabulated_words": c.tabulated_words,
        "point": c.point,
        "folner": c.folner,
    })
}

pub fn cover_from_json(v: &Value) -> Result<CoACover, String> {
    let kept = rows(v, "kept")?
        .iter()
        .map(|e| {
            Ok(CoverEntry {
                word: Word::parse(&str_field(e, "word")?).map_err(|err| err.to_string())?,
                upper: rat_field(e, "upper")?,
                lower: rat_field(e, "lower")?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(CoACover {
        resolution: u32::try_from(u64_at(field(v, "k")?)?).map_err(|e| e.to_string())?,
        tol: rat_field(v, "tol")?,
        horizon: u64_at(field(v, "horizon")?)?,
        headline_fraction: rat_field(v, "headline_fraction")?,
        kept,
        union_sojourn: density_from_json(field(v, "union_sojourn")?)?,
        tabulated_words: u64_at(field(v, "tabulated_words")?)?,
        point: str_field(v, "point")?,
        folner: str_field(v, "folner")?,
    })
}

pub fn cover_tsv(c: &CoACover) -> String {
    let mut out = format!(
        "# point\t{}\n# folner\t{}\n# k\t{}\ttol {}\thorizon {}\n",
        c.point,
        c.folner,
        c.resolution,
        rational(&c.tol),
        c.horizon
    );
    out += "word\tupper\tlower\tupper_approx\tlower_approx\n";
    for e in &c.kept {
        out += &format!(
            "{}\t{}\t{}\t{}\t{}\n",
            e.word,
            rational(&e.upper),
            rational(&e.lower),
            decimal6(&e.upper),
            decimal6(&e.lower)
        );
    }
    out += "# union sojourn\n";
    out += &density_tsv(&c.union_sojourn);
    out
}

fn witnesses(list: &[(i64, MetricValue)]) -> Value {
    Value::Array(list.iter().map(|(g, d)| json!({"g": g, "distance": metric(d)})).collect())
}

pub fn verdict_json(v: &ChaosVerdict) -> Value {
    let p = &v.parameters;
    json!({
        "proximal_evidence": witnesses(&v.proximal_evidence),
        "proximal_min": metric(&v.proximal_min),
        "tail_sup": v.tail_sup.iter().map(|t| json!({
            "n": t.index,
            "distance": metric(&t.value),
            "g": t.witness,
        })).collect::<Vec<_>>(),
        "liyorke": v.liyorke,
        "parameters": {
            "horizon": p.horizon,
            "resolution": p.resolution,
            "proximal_threshold": p.proximal_threshold.to_string(),
            "tail_floor": p.tail_floor.to_string(),
            "tail_indices": p.tail_indices,
        },
    })
}

pub fn fchaotic_json(w: &FChaoticWitness) -> Value {
    let opt = |m: Option<MetricValue>| m.map_or(Value::Null, |m| Value::String(metric(&m)));
    json!({
        "l_seq": witnesses(&w.l_seq),
        "r_seq": witnesses(&w.r_seq),
        "s_seq": witnesses(&w.s_seq),
        "t_seq": witnesses(&w.t_seq),
        "l_inf": opt(w.l_inf()),
        "r_bound": opt(w.r_bound()),
        "s_inf": opt(w.s_inf()),
        "t_bound": opt(w.t_bound()),
        "horizon": w.horizon,
        "resolution": w.resolution,
        "shells": w.shells,
    })
}

/// Reads a witness list back as `(g, distance)` pairs.
pub fn witnesses_from_json(v: &Value) -> Result<Vec<(i64, MetricValue)>, String> {
    v.as_array()
        .ok_or("expected an array")?
        .iter()
        .map(|w| {
            let g = field(w, "g")?.as_i64().ok_or("g is not an integer")?;
            Ok((g, parse_metric(&str_field(w, "distance")?)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitdensity_core::attraction::{coa_cover, CoverConfig};
    use orbitdensity_core::chaos::f_chaotic_witness;
    use orbitdensity_core::density::{density_report, half};
    use orbitdensity_core::folner::FolnerSequence;
    use orbitdensity_core::setclass::{example52_sets, example53_support};
    use orbitdensity_core::shift::{Alphabet, SymbolicPoint};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(decimal6(&r(1, 2)), "0.500000");
        assert_eq!(decimal6(&r(1, 3)), "0.333333");
        assert_eq!(decimal6(&r(2, 3)), "0.666667");
        // 0.0000005 sits exactly between two steps: ties go to the even neighbor.
        assert_eq!(decimal6(&r(1, 2_000_000)), "0.000000");
        assert_eq!(decimal6(&r(3, 2_000_000)), "0.000002");
        assert_eq!(decimal6(&r(-7, 4)), "-1.750000");
        assert_eq!(decimal6(&r(-1, 3_000_000)), "0.000000");
        assert_eq!(decimal6(&r(5041, 5041)), "1.000000");
    }

    #[test]
    fn rationals_keep_their_denominator() {
        assert_eq!(rational(&r(1, 1)), "1/1");
        assert_eq!(rational(&r(0, 5)), "0/1");
        assert_eq!(rational(&r(6, 4)), "3/2");
    }

    #[test]
    fn metric_strings_round_trip() {
        for m in [MetricValue::ONE, MetricValue::exact(6), MetricValue::upper_bound(7)] {
            assert_eq!(parse_metric(&metric(&m)).unwrap(), m);
        }
        assert_eq!(metric(&MetricValue::upper_bound(7)), "<=2^-7");
        assert!(parse_metric("1/2").is_err());
    }

    #[test]
    fn density_round_trip() {
        let (a, _, _) = example52_sets();
        let rep = density_report(&a, &FolnerSequence::standard(), 300, &half()).unwrap();
        let text = to_text(&density_json(&rep));
        let back = density_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, rep);
        assert!(density_tsv(&rep).contains("n\tratio\tratio_approx\n0\t0/1\t0.000000\n"));
    }

    #[test]
    fn cover_round_trip() {
        let z = SymbolicPoint::indicator(example53_support());
        let c = coa_cover(&z, &FolnerSequence::example53_f(), &CoverConfig::new(1, 60, r(3, 10))).unwrap();
        let back = cover_from_json(&serde_json::from_str(&to_text(&cover_json(&c))).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(cover_tsv(&c).contains("111\t29/31\t7/8\t0.935484\t0.875000\n"));
    }

    #[test]
    fn witness_round_trip() {
        let zero = SymbolicPoint::constant(Alphabet::BINARY, 0).unwrap();
        let w = f_chaotic_witness(&SymbolicPoint::example51(), &zero, 200, 4, 3).unwrap();
        let v = fchaotic_json(&w);
        assert_eq!(witnesses_from_json(&v["l_seq"]).unwrap(), w.l_seq);
        assert_eq!(witnesses_from_json(&v["t_seq"]).unwrap(), w.t_seq);
    }
}
