//! Browser bindings: each entry point takes the same literals as the command
//! line tool and returns a JSON document (`{"error": ..}` on failure).

use ramify::lft::{self, LftDir, LftKind};
use ramify::parse;
use ramify::resolve;
use ramify::stokes;
use ramify::{ConnGerm, DualPuiseuxChar, Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const PRECISION: usize = 192;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => {
            let mut err = json!({ "kind": e.kind(), "message": e.to_string() });
            if let Error::Parse { col, .. } = e {
                err["column"] = json!(col);
            }
            json!({ "error": err }).to_string()
        }
    }
}

fn dpc_json(d: &DualPuiseuxChar) -> Value {
    json!({ "text": d.to_string(), "q": d.q, "p": d.p, "betas": d.betas, "e": d.e_chain() })
}

fn char_or_conn(s: &str) -> Result<(DualPuiseuxChar, Option<ConnGerm>)> {
    if s.trim_start().starts_with('(') {
        Ok((parse::parse_dpc(s)?, None))
    } else {
        let c = parse::parse_conn(s, None)?;
        Ok((c.dual_puiseux_char()?, Some(c)))
    }
}

/// Characteristic, irregularity of `End` and the resolution plan.
#[wasm_bindgen]
pub fn characteristic(input: &str) -> String {
    respond((|| {
        let (d, _) = char_or_conn(input)?;
        let plan = resolve::plan(&d);
        let moves: Vec<String> = plan.moves.iter().map(|m| m.to_string()).collect();
        let trace: Vec<String> = plan.trace.iter().map(|t| t.to_string()).collect();
        Ok(json!({
            "dpc": dpc_json(&d),
            "irr_end": d.irr_end(),
            "resolvable": resolve::is_resolvable(&d),
            "violated": resolve::first_violation(&d),
            "plan": { "moves": moves, "trace": trace, "success": plan.success },
        }))
    })())
}

/// `kind` is `0inf`, `inf0` or `infinf`; characteristics go through the
/// characteristic-level rule, connections through the series computation.
#[wasm_bindgen]
pub fn fourier(kind: &str, inverse: bool, input: &str) -> String {
    respond((|| {
        let dir = match kind {
            "0inf" => LftDir::ZeroInf,
            "inf0" => LftDir::InfZero,
            "infinf" => LftDir::InfInf,
            _ => return Err(Error::PreconditionViolated(format!("unknown transform {}", kind))),
        };
        let k = if inverse { LftKind::inverse_of(dir) } else { LftKind::forward(dir) };
        let (d, conn) = char_or_conn(input)?;
        let char_out = lft::lft_char(k, &d)?;
        let mut v = json!({ "kind": k.to_string(), "input": dpc_json(&d), "dpc": dpc_json(&char_out) });
        if let Some(c) = conn {
            let c = if c.place() == k.place_in() { c } else { c.at(k.place_in()) };
            match lft::lft_series(k, &c) {
                Ok(o) => v["series"] = json!(o.to_string()),
                Err(e @ Error::NotRepresentable(_)) => v["unavailable"] = json!(e.to_string()),
                Err(e) => return Err(e),
            }
        }
        Ok(v)
    })())
}

/// Stokes directions and the reduced permutation word.
#[wasm_bindgen]
pub fn stokes(input: &str) -> String {
    respond((|| {
        let c = parse::parse_conn(input, None)?;
        let dirs = stokes::stokes_directions(&c, PRECISION)?;
        let s = stokes::order_sequence(&c, PRECISION)?;
        let word = stokes::reduce(&stokes::to_permutations(&s));
        Ok(json!({
            "dirs": stokes::describe_directions(&dirs),
            "values": dirs.iter().map(|d| d.approx).collect::<Vec<f64>>(),
            "word": word.names(),
            "strands": word.n,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_points() {
        let v: Value = serde_json::from_str(&characteristic("conn(2; x^(-3/2))")).unwrap();
        assert_eq!(v["dpc"]["text"], "(2,3;3)");
        assert_eq!(v["irr_end"], 3);
        let v: Value = serde_json::from_str(&fourier("0inf", false, "conn(2; x^(-1/2); at=0)")).unwrap();
        assert_eq!(v["dpc"]["q"], 3);
        assert!(v["series"].is_string());
        let v: Value = serde_json::from_str(&stokes("conn(2; x^(-3/2); at=0)")).unwrap();
        assert_eq!(v["word"], json!(["s1", "s1", "s1"]));
        let v: Value = serde_json::from_str(&characteristic("conn(2; x^(-3/2")).unwrap();
        assert_eq!(v["error"]["kind"], "ParseError");
        assert!(v["error"]["column"].is_number());
    }
}
