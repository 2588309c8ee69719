//! Report serialization. Rationals are rendered as strings ("p/q" in
//! lowest terms with positive denominator, or a bare integer) so
//! downstream consumers never round through floats. Key order is fixed
//! and all set-valued fields are sorted, so identical inputs produce
//! byte-identical output.

use crate::invariants::Analysis;
use crate::num::*;
use crate::polytope::Polytope;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

fn rat_value(x: &Rat) -> Value {
    Value::String(rat_str(x))
}

fn rat_vec_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

fn lat_vec_value(v: &[Int]) -> Value {
    Value::Array(
        v.iter()
            .map(|x| match x.to_i64() {
                Some(n) => json!(n),
                None => json!(x.to_string()),
            })
            .collect(),
    )
}

fn vertices_value(p: &Polytope) -> Value {
    Value::Array(p.vertices.iter().map(|v| rat_vec_value(v)).collect())
}

pub fn report_json(name: &str, a: &Analysis) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(name));
    m.insert("dim".into(), json!(a.p.dim));

    let fine = match &a.fine {
        Some(f) => json!({ "dim": f.adim, "vertices": vertices_value(f) }),
        None => json!({ "dim": -1, "vertices": [] }),
    };
    m.insert("fine_interior".into(), fine);
    m.insert(
        "support".into(),
        Value::Array(a.support.iter().map(|s| lat_vec_value(s)).collect()),
    );
    m.insert(
        "canonical_hull".into(),
        match &a.chull {
            Some(c) => json!({ "vertices": vertices_value(c) }),
            None => Value::Null,
        },
    );
    m.insert(
        "flags".into(),
        json!({
            "canonically_closed": a.flags.canonically_closed,
            "integrally_closed": a.flags.integrally_closed,
            "reflexive": a.flags.reflexive,
            "almost_reflexive": a.flags.almost_reflexive,
            "pseudoreflexive": a.flags.pseudoreflexive,
        }),
    );
    m.insert(
        "kodaira".into(),
        match a.kodaira {
            Some(k) => json!(k),
            None => json!("-inf"),
        },
    );
    m.insert(
        "canonical_degree".into(),
        a.canonical_degree.as_ref().map(rat_value).unwrap_or(Value::Null),
    );
    m.insert(
        "surface".into(),
        match &a.surface {
            Some((c1sq, chi, c2)) => json!({
                "c1sq": rat_value(c1sq),
                "chi": chi,
                "c2": rat_value(c2),
            }),
            None => Value::Null,
        },
    );
    m.insert(
        "fibration".into(),
        match &a.fibration {
            Some(fd) => json!({
                "nf_basis": Value::Array(fd.nf_basis.iter().map(|b| lat_vec_value(b)).collect()),
                "pf_vertices": vertices_value(&fd.pf),
                "phif_vertices": vertices_value(&fd.phif),
            }),
            None => Value::Null,
        },
    );
    m.insert("codim2_ok".into(), json!(a.codim2_ok));
    m.insert("lambda0".into(), rat_value(&a.lambda0));
    m.insert(
        "lambda_closed_interval".into(),
        match &a.lambda_interval {
            Some((lo, hi)) => json!([rat_value(lo), rat_value(hi)]),
            None => Value::Null,
        },
    );
    Value::Object(m)
}

/// Plain-text rendering of the same report, one aligned field per line.
pub fn report_text(name: &str, a: &Analysis) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(&format!("{k:<24}{v}\n"));
    };
    push("name", name.into());
    push("dim", a.p.dim.to_string());
    match &a.fine {
        Some(f) => {
            push("fine_interior.dim", f.adim.to_string());
            push("fine_interior.vertices", fmt_vertices(f));
        }
        None => push("fine_interior", "empty".into()),
    }
    push(
        "support",
        a.support
            .iter()
            .map(|s| fmt_lat(s))
            .collect::<Vec<_>>()
            .join(" "),
    );
    if let Some(c) = &a.chull {
        push("canonical_hull.vertices", fmt_vertices(c));
    }
    push(
        "flags",
        format!(
            "canonically_closed={} integrally_closed={} reflexive={} almost_reflexive={} pseudoreflexive={}",
            a.flags.canonically_closed,
            a.flags.integrally_closed,
            a.flags.reflexive,
            a.flags.almost_reflexive,
            a.flags.pseudoreflexive
        ),
    );
    push(
        "kodaira",
        a.kodaira.map(|k| k.to_string()).unwrap_or("-inf".into()),
    );
    if let Some(k) = &a.canonical_degree {
        push("canonical_degree", rat_str(k));
    }
    if let Some((c1sq, chi, c2)) = &a.surface {
        push("surface", format!("c1sq={} chi={} c2={}", rat_str(c1sq), chi, rat_str(c2)));
    }
    if let Some(fd) = &a.fibration {
        push(
            "fibration.nf_basis",
            fd.nf_basis.iter().map(|b| fmt_lat(b)).collect::<Vec<_>>().join(" "),
        );
        push("fibration.pf_vertices", fmt_vertices(&fd.pf));
        push("fibration.phif_vertices", fmt_vertices(&fd.phif));
    }
    push("codim2_ok", a.codim2_ok.to_string());
    push("lambda0", rat_str(&a.lambda0));
    if let Some((lo, hi)) = &a.lambda_interval {
        push("lambda_closed_interval", format!("[{}, {}]", rat_str(lo), rat_str(hi)));
    }
    out
}

fn fmt_vertices(p: &Polytope) -> String {
    p.vertices
        .iter()
        .map(|v| format!("({})", rat_vec_str(v).join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_lat(v: &[Int]) -> String {
    format!(
        "({})",
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::analyze;
    use crate::num::point;

    #[test]
    fn cube_report_fields() {
        let vs: Vec<RatVec> = (0..8)
            .map(|i| point(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]))
            .collect();
        let cube = Polytope::from_vertices(&vs, 3);
        let a = analyze(&cube, true);
        let v = report_json("cube", &a);
        assert_eq!(v["kodaira"], json!("-inf"));
        assert_eq!(v["lambda0"], json!("2"));
        assert_eq!(v["fine_interior"]["dim"], json!(-1));
        assert_eq!(v["canonical_hull"], Value::Null);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "name",
                "dim",
                "fine_interior",
                "support",
                "canonical_hull",
                "flags",
                "kodaira",
                "canonical_degree",
                "surface",
                "fibration",
                "codim2_ok",
                "lambda0",
                "lambda_closed_interval"
            ]
            .iter()
            .collect::<Vec<_>>()
        );
    }

    #[test]
    fn parallelepiped_report_values() {
        let p = crate::testutil::parallelepiped();
        let a = analyze(&p, false);
        let v = report_json("pp", &a);
        assert_eq!(
            v["fine_interior"]["vertices"],
            json!([["1/2", "1/2", "1/2"]])
        );
        assert_eq!(v["kodaira"], json!(0));
        assert_eq!(v["lambda_closed_interval"], Value::Null);
        // identical analyses serialize identically
        let s1 = serde_json::to_string(&v).unwrap();
        let s2 = serde_json::to_string(&report_json("pp", &analyze(&p, false))).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn text_report_renders() {
        let p = crate::testutil::parallelepiped();
        let a = analyze(&p, false);
        let t = report_text("pp", &a);
        assert!(t.contains("fine_interior.vertices  (1/2,1/2,1/2)"));
        assert!(t.contains("kodaira"));
    }
}
