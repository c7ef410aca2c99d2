//! Machine-readable verdicts: one JSON object on stdout per command.

use std::time::Duration;

use nova_core::{Failure, Residual, Tensor3};
use serde_json::{json, Map, Value};

use crate::doc::{scalar_value, vector_value};
use crate::props::PropOutcome;

#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub flag: bool,
    pub residual_norm_zero: bool,
    /// Present iff `flag` is false.
    pub witness: Option<Value>,
    pub elapsed: Duration,
    /// Extra keys placed after the fixed ones.
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(check: &str, flag: bool, residual_norm_zero: bool, witness: Option<Value>, elapsed: Duration) -> Report {
        let witness = match (flag, witness) {
            (true, _) => None,
            (false, Some(w)) => Some(w),
            (false, None) => Some(json!({"identity": check})),
        };
        Report { check: check.to_string(), flag, residual_norm_zero, witness, elapsed, extra: Map::new() }
    }

    /// A verdict from a residual, listing every failure under `verbose`.
    pub fn from_residual(check: &str, res: &Residual, elapsed: Duration, verbose: bool) -> Report {
        let mut r = Report::new(check, res.is_zero(), res.is_zero(), res.first().map(failure_value), elapsed);
        if verbose {
            r.extra.insert("failures".into(), Value::Array(res.failures.iter().map(failure_value).collect()));
        }
        r
    }

    /// A verdict from a three-tensor that should vanish; the witness names
    /// its first nonzero coefficient and lists every term.
    pub fn from_tensor(check: &str, identity: &str, t: &Tensor3, elapsed: Duration) -> Report {
        let terms = t.nonzero_entries();
        let witness = terms.first().map(|(idx, c)| {
            json!({
                "identity": identity,
                "indices": idx,
                "value": scalar_value(c),
                "terms": terms.iter().map(|(i, c)| json!({"indices": i, "coeff": scalar_value(c)})).collect::<Vec<_>>(),
            })
        });
        Report::new(check, terms.is_empty(), terms.is_empty(), witness, elapsed)
    }

    pub fn from_outcome(o: &PropOutcome, verbose: bool) -> Report {
        let witness = o.failures.first().map(|f| json!({"detail": f.detail, "instance": f.instance.to_value()}));
        let mut r = Report::new(o.id, o.passed(), o.failures.is_empty(), witness, o.elapsed);
        r.extra.insert("field".into(), json!(o.field.to_string()));
        r.extra.insert("instances".into(), json!(o.instances));
        r.extra.insert("hypothesis_hits".into(), json!(o.hypothesis_hits));
        r.extra.insert("counterexamples".into(), json!(o.failures.len()));
        if verbose {
            let all = o.failures.iter().map(|f| json!({"detail": f.detail, "instance": f.instance.to_value()}));
            r.extra.insert("failures".into(), Value::Array(all.collect()));
        }
        r
    }

    pub fn with(mut self, key: &str, v: Value) -> Report {
        self.extra.insert(key.into(), v);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check));
        m.insert("flag".into(), json!(self.flag));
        m.insert("residual_norm_zero".into(), json!(self.residual_norm_zero));
        m.insert("witness".into(), self.witness.clone().unwrap_or(Value::Null));
        m.insert("elapsed_ms".into(), json!(self.elapsed.as_millis() as u64));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    pub fn exit_code(&self) -> i32 {
        if self.flag {
            0
        } else {
            1
        }
    }

    /// One line for stderr.
    pub fn summary(&self) -> String {
        let verdict = if self.flag { "pass" } else { "FAIL" };
        let mut s = format!("{}: {verdict} ({} ms)", self.check, self.elapsed.as_millis());
        if let Some(w) = &self.witness {
            if let Some(terms) = w.get("terms").and_then(Value::as_array) {
                s.push_str(&format!("\n  residual: {}", tensor_text(terms)));
            } else if let Some(id) = w.get("identity") {
                s.push_str(&format!("\n  first failure: {id} at {}", w.get("indices").unwrap_or(&Value::Null)));
            } else if let Some(d) = w.get("detail") {
                s.push_str(&format!("\n  {d}"));
            }
        }
        s
    }
}

fn failure_value(f: &Failure) -> Value {
    json!({"identity": f.identity, "indices": f.indices, "value": vector_value(&f.value)})
}

/// `2e1⊗e2⊗e2 − 4e2⊗e1⊗e2` from the witness terms (basis indices from 1).
fn tensor_text(terms: &[Value]) -> String {
    let mut s = String::new();
    for (k, t) in terms.iter().enumerate() {
        let coeff = match &t["coeff"] {
            Value::String(c) => c.clone(),
            other => other.to_string(),
        };
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, coeff),
        };
        if k > 0 {
            s.push_str(if neg { " − " } else { " + " });
        } else if neg {
            s.push('−');
        }
        if mag != "1" {
            s.push_str(&mag);
        }
        let idx: Vec<String> = t["indices"]
            .as_array()
            .map(|a| a.iter().map(|i| format!("e{}", i.as_u64().unwrap_or(0) + 1)).collect())
            .unwrap_or_default();
        s.push_str(&idx.join("⊗"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use nova_core::Field;

    #[test]
    fn witness_is_null_exactly_when_the_flag_holds() {
        let ok = Report::new("x", true, true, Some(json!(1)), Duration::ZERO).to_value();
        assert!(ok["witness"].is_null());
        let bad = Report::new("x", false, true, None, Duration::ZERO).to_value();
        assert!(!bad["witness"].is_null());
    }

    #[test]
    fn tensor_witness_text() {
        let f = Field::Rational;
        let t = &(&Tensor3::simple(f, 2, 0, 1, 1).scale(&f.int(2)) - &Tensor3::simple(f, 2, 1, 0, 1).scale(&f.int(4)))
            + &Tensor3::simple(f, 2, 1, 1, 0).scale(&f.int(2));
        let r = Report::from_tensor("check nybe", "nybe", &t, Duration::ZERO);
        assert!(r.summary().contains("2e1⊗e2⊗e2 − 4e2⊗e1⊗e2 + 2e2⊗e2⊗e1"), "{}", r.summary());
    }
}
