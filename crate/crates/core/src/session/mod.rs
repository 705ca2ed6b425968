//! The session language: rings, morphisms, checks and computations in text,
//! evaluated in order into a deterministic report.
//!
//! ```text
//! ring A = QQ[x,y] adic (0);
//! ring B = QQ[x,y] / (y) adic (0);
//! morphism f : A -> B { x -> x, y -> y };
//! check surjective f;
//! compute neighbourhood f as H;
//! check thickening H_from;
//! compute truncation H @ level 1;
//! ```

mod ast;
mod exec;
mod parser;

pub use ast::{CheckKind, ComputeKind, Session, SessionOption, Statement};
pub use exec::{
    execute, exit_code, print_report, EntryVerdict, Format, JsonReport, Options, ReportOptions, StatementReport,
};
pub use parser::parse_session;

/// Parse then execute.
pub fn run_session(text: &str, options: &Options) -> crate::Result<JsonReport> {
    Ok(execute(&parse_session(text)?, options))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    const AXIS: &str = "ring A = QQ[x,y] adic (0);
ring B = QQ[x,y] / (y) adic (0);
morphism f : A -> B { x -> x, y -> y };
check surjective f;
compute neighbourhood f as H;
check thickening H_from;
compute truncation H @ level 1;
";

    fn quiet() -> Options {
        Options {
            timing: false,
            ..Options::default()
        }
    }

    fn parse_err(src: &str) -> (usize, usize, String) {
        match parse_session(src) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_spec_like_statements() {
        let s = parse_session("ring A = QQ[x,y] adic (x,y);").unwrap();
        assert_eq!(s.statements.len(), 1);
        let s = parse_session(
            "ring A = QQ[x,y] adic (x,y); ring B = QQ[x,y] / (y^2 - x^3) adic (x,y); \
             morphism f : A -> B { x -> x, y -> y }; check thickening f;",
        )
        .unwrap();
        assert_eq!(s.statements.len(), 4);
    }

    #[test]
    fn unclosed_bracket_is_located() {
        let (line, col, msg) = parse_err("ring A = QQ[x");
        assert_eq!((line, col), (1, 14), "{msg}");
        let (line, _, msg) = parse_err("ring A = QQ[x] adic (x);\ncheck adic g;");
        assert_eq!(line, 2);
        assert!(msg.contains("undefined name 'g'"), "{msg}");
    }

    #[test]
    fn arity_mismatch() {
        let (_, _, msg) = parse_err("ring A = QQ[x,y] adic (0); ring B = QQ[t] adic (0); morphism f : A -> B { x -> t };");
        assert!(msg.contains("arity mismatch"), "{msg}");
        let (_, _, msg) = parse_err("ring A = QQ[x] adic (0); morphism f : A -> A { x -> z };");
        assert!(msg.contains("'z'"), "{msg}");
    }

    #[test]
    fn compute_bindings_are_in_scope() {
        let (_, _, msg) = parse_err("ring A = QQ[x] adic (0); compute localisation A at (x) as L; check adic L_to;");
        assert!(msg.contains("L_to"), "{msg}");
        parse_session("ring A = QQ[x] adic (0); compute localisation A at (x) as L; check adic L_loc;").unwrap();
        parse_session("ring A = QQ[x] adic (0); morphism g : A -> A { x -> x }; compute localisation A at (x) as L; morphism h : L -> L { x -> x, u -> u };").unwrap();
    }

    #[test]
    fn print_parse_round_trip() {
        let s = parse_session(AXIS).unwrap();
        let printed = s.to_string();
        let again = parse_session(&printed).unwrap();
        assert_eq!(again, s);
        assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn axis_session() {
        let rep = run_session(AXIS, &quiet()).unwrap();
        let verdicts: Vec<&str> = rep.statements.iter().map(|s| s.verdict.as_str()).collect();
        assert_eq!(verdicts, ["ok", "ok", "ok", "true", "ok", "true", "ok"]);
        assert!(rep.statements[4].certificates.contains(&"D = [y]".to_string()));
        assert_eq!(rep.statements[6].certificates, ["basis = [y^2]"]);
        assert_eq!(exit_code(&rep), 0);
    }

    #[test]
    fn adic_failure_and_exit_codes() {
        let rep = run_session(
            "ring A = QQ[x] adic (x); ring K = QQ[] adic (0); morphism f : A -> K { x -> 1 }; check adic f;",
            &quiet(),
        )
        .unwrap();
        let last = rep.statements.last().unwrap();
        assert_eq!(last.verdict, EntryVerdict::False);
        assert!(last.certificates.contains(&"1 ∉ rad(0)".to_string()), "{:?}", last.certificates);
        assert_eq!(exit_code(&rep), 1);
        assert_eq!(exit_code(&run_session("", &quiet()).unwrap()), 0);
        assert!(run_session("", &quiet()).unwrap().statements.is_empty());
    }

    #[test]
    fn failures_do_not_abort() {
        let rep = run_session(
            "ring A = QQ[x] adic (0); ring B = QQ[x] / (x) adic (0); morphism bad : B -> A { x -> x }; \
             check adic bad; morphism g : A -> B { x -> x }; check surjective g;",
            &quiet(),
        )
        .unwrap();
        let verdicts: Vec<&str> = rep.statements.iter().map(|s| s.verdict.as_str()).collect();
        assert_eq!(verdicts, ["ok", "ok", "error", "error", "ok", "true"]);
        assert!(rep.statements[3].certificates[0].contains("unavailable"));
        assert_eq!(exit_code(&rep), 3);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let rep = run_session(
            "ring A = QQ[x,y,z] adic (x,y,z); ring B = QQ[x,y,z] / (x^2 - y*z, y^2 - x*z, z^2 - x*y) adic (x,y,z); \
             morphism f : A -> B { x -> x, y -> y, z -> z }; set budget = 1; check thickening f;",
            &quiet(),
        )
        .unwrap();
        assert_eq!(rep.statements.last().unwrap().verdict, EntryVerdict::Inconclusive);
        assert_eq!(exit_code(&rep), 2);
        assert!(print_report(&rep, Format::Text).contains("INCONCLUSIVE (budget)"));
    }

    #[test]
    fn universal_with_dual_numbers() {
        let base = "ring A = QQ[x] adic (0); ring B = QQ[x] / (x) adic (0); morphism f : A -> B { x -> x };
ring Cp = QQ[e] / (e^2) adic (0); ring C = QQ[e] / (e) adic (0);
morphism q : B -> C { x -> 0 };";
        let good = format!("{base} morphism p : A -> Cp {{ x -> e }}; check universal f with p, q;");
        let rep = run_session(&good, &quiet()).unwrap();
        let last = rep.statements.last().unwrap();
        assert_eq!(last.verdict, EntryVerdict::True, "{:?}", last.certificates);
        assert!(last.certificates.contains(&"a = 2".to_string()));

        let bad = format!("{base} morphism p : A -> Cp {{ x -> e + 1 }}; check universal f with p, q;");
        let rep = run_session(&bad, &quiet()).unwrap();
        assert_ne!(rep.statements.last().unwrap().verdict, EntryVerdict::True);
    }

    #[test]
    fn constructions_bind_names() {
        let rep = run_session(
            "ring A = QQ[x] adic (x); ring B = QQ[x] / (x^2) adic (x); morphism f : A -> B { x -> x };
compute tensor f, f as T; check surjective T_psi; compute diagonal f as D; check surjective D_diag;
compute localisation A at (x + 1) as L; check adic L_loc;",
            &quiet(),
        )
        .unwrap();
        for s in &rep.statements {
            assert!(matches!(s.verdict, EntryVerdict::Ok | EntryVerdict::True), "{s:?}");
        }
        let text = print_report(&rep, Format::Text);
        assert!(text.lines().all(|l| l.starts_with("OK") || l.starts_with("    ")), "{text}");
    }

    #[test]
    fn json_key_order_is_stable() {
        let rep = run_session(AXIS, &quiet()).unwrap();
        let json = print_report(&rep, Format::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["statements"][4]["certificates"][0], "D = [y]");
        let keys = ["\"id\"", "\"kind\"", "\"name\"", "\"verdict\"", "\"certificates\"", "\"levels_used\"", "\"millis\""];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(json, print_report(&run_session(AXIS, &quiet()).unwrap(), Format::Json));
    }
}
