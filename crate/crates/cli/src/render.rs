//! JSON renderings of the exact types. Coefficients are strings `p/q`.

use serde_json::{json, Value};

use fatrec_core::{CouplingSeries, TPoly, Var, XSeries};

pub fn tpoly(p: &TPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"t_power": e, "coeff": c.to_string()}))
        .collect();
    Value::from(terms)
}

pub fn coupling_series(s: &CouplingSeries) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(m, c)| {
            json!({
                "couplings": m.couplings(),
                "t_power": m.t_power,
                "gs_power": m.gs_power,
                "coeff": c.to_string(),
            })
        })
        .collect();
    json!({"max_weight": s.trunc(), "terms": terms})
}

/// Terms of a series in `x_1 .. x_n`, highest total degree first.
pub fn xseries(w: &XSeries, n: usize) -> Value {
    let mut terms = Vec::new();
    for (m, p) in w.terms().collect::<Vec<_>>().into_iter().rev() {
        let exps: Vec<i32> = (1..=n as u32).map(|i| m.exp_of(Var::x(i))).collect();
        for (e, c) in p.terms() {
            terms.push(json!({"exps": exps, "coeff": c.to_string(), "t_power": e}));
        }
    }
    json!({ "terms": terms })
}
