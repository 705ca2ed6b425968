use std::collections::HashMap;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::adic::tensor_variable_names;
use crate::error::{Error, Result};
use crate::polyalg::{FieldSpec, PolyContext, Polynomial};
use crate::session::ast::{CheckKind, ComputeKind, Session, SessionOption, Statement};
use crate::syntax::{Cursor, Tok, Token};

#[derive(Clone)]
enum Entry {
    Ring(Arc<PolyContext>),
    Morphism { source: String, target: String },
}

/// Names known at each point of the session, with the variable contexts
/// needed to parse later polynomials.
#[derive(Default)]
struct Scope {
    names: HashMap<String, Entry>,
}

impl Scope {
    fn define(&mut self, name: &str, at: &Token, entry: Entry) -> Result<()> {
        if self.names.contains_key(name) {
            return Err(Error::parse(at.line, at.column, format!("name '{name}' is already defined")));
        }
        self.names.insert(name.to_string(), entry);
        Ok(())
    }

    fn ring(&self, name: &str, at: &Token) -> Result<Arc<PolyContext>> {
        match self.names.get(name) {
            Some(Entry::Ring(ctx)) => Ok(ctx.clone()),
            Some(Entry::Morphism { .. }) => Err(Error::parse(at.line, at.column, format!("'{name}' is a morphism, not a ring"))),
            None => Err(Error::parse(at.line, at.column, format!("undefined name '{name}'"))),
        }
    }

    fn morphism(&self, name: &str, at: &Token) -> Result<(String, String)> {
        match self.names.get(name) {
            Some(Entry::Morphism { source, target }) => Ok((source.clone(), target.clone())),
            Some(Entry::Ring(_)) => Err(Error::parse(at.line, at.column, format!("'{name}' is a ring, not a morphism"))),
            None => Err(Error::parse(at.line, at.column, format!("undefined name '{name}'"))),
        }
    }
}

/// Parse and resolve a session. Errors carry line and column.
pub fn parse_session(text: &str) -> Result<Session> {
    let mut cur = Cursor::new(text)?;
    let mut scope = Scope::default();
    let mut statements = Vec::new();
    while !matches!(cur.peek_tok(), Tok::Eof) {
        let (kw, at) = cur.expect_ident()?;
        let st = match kw.as_str() {
            "ring" => ring(&mut cur, &mut scope)?,
            "morphism" => morphism(&mut cur, &mut scope)?,
            "check" => check(&mut cur, &scope)?,
            "compute" => compute(&mut cur, &mut scope)?,
            "set" => set(&mut cur)?,
            other => {
                return Err(Error::parse(
                    at.line,
                    at.column,
                    format!("expected a statement (ring, morphism, check, compute, set), found '{other}'"),
                ))
            }
        };
        cur.expect_sym(";")?;
        statements.push(st);
    }
    Ok(Session { statements })
}

fn small_int(cur: &mut Cursor, what: &str) -> Result<u64> {
    let at = cur.peek().clone();
    let n = cur.expect_int()?;
    n.to_u64().ok_or_else(|| Error::parse(at.line, at.column, format!("{what} out of range")))
}

fn level(cur: &mut Cursor) -> Result<Option<u32>> {
    if !cur.eat_sym("@") {
        return Ok(None);
    }
    cur.expect_keyword("level")?;
    let at = cur.peek().clone();
    let n = small_int(cur, "level")?;
    u32::try_from(n).map(Some).map_err(|_| Error::parse(at.line, at.column, "level out of range"))
}

fn field(cur: &mut Cursor) -> Result<FieldSpec> {
    let (name, at) = cur.expect_ident()?;
    match name.as_str() {
        "QQ" => Ok(FieldSpec::Rationals),
        "GF" => {
            cur.expect_sym("(")?;
            let pat = cur.peek().clone();
            let p = small_int(cur, "characteristic")?;
            cur.expect_sym(")")?;
            let p = u32::try_from(p).map_err(|_| Error::parse(pat.line, pat.column, "characteristic out of range"))?;
            FieldSpec::prime(p).map_err(|e| Error::parse(pat.line, pat.column, e.to_string()))
        }
        _ => Err(Error::parse(at.line, at.column, format!("expected QQ or GF(p), found '{name}'"))),
    }
}

fn nonzero(ps: Vec<Polynomial>) -> Vec<Polynomial> {
    ps.into_iter().filter(|p| !p.is_zero()).collect()
}

fn ring(cur: &mut Cursor, scope: &mut Scope) -> Result<Statement> {
    let (name, at) = cur.expect_ident()?;
    cur.expect_sym("=")?;
    let field = field(cur)?;
    let open = cur.peek().clone();
    cur.expect_sym("[")?;
    let mut vars = Vec::new();
    if !cur.at_sym("]") {
        loop {
            vars.push(cur.expect_ident()?);
            if !cur.eat_sym(",") {
                break;
            }
        }
    }
    cur.expect_sym("]")?;
    let names: Vec<String> = vars.iter().map(|(v, _)| v.clone()).collect();
    let ctx = PolyContext::new(names, field).map_err(|e| Error::parse(open.line, open.column, e.to_string()))?;
    let mut relations = Vec::new();
    if cur.eat_sym("/") {
        cur.expect_sym("(")?;
        relations = nonzero(cur.poly_list(&ctx, ")")?);
        cur.expect_sym(")")?;
    }
    cur.expect_keyword("adic")?;
    cur.expect_sym("(")?;
    let def_ideal = nonzero(cur.poly_list(&ctx, ")")?);
    cur.expect_sym(")")?;
    scope.define(&name, &at, Entry::Ring(ctx.clone()))?;
    Ok(Statement::Ring {
        name,
        context: ctx,
        relations,
        def_ideal,
    })
}

fn morphism(cur: &mut Cursor, scope: &mut Scope) -> Result<Statement> {
    let (name, at) = cur.expect_ident()?;
    cur.expect_sym(":")?;
    let (source, sat) = cur.expect_ident()?;
    let sctx = scope.ring(&source, &sat)?;
    cur.expect_sym("->")?;
    let (target, tat) = cur.expect_ident()?;
    let tctx = scope.ring(&target, &tat)?;
    let open = cur.peek().clone();
    cur.expect_sym("{")?;
    let mut slots: Vec<Option<Polynomial>> = vec![None; sctx.nvars()];
    if !cur.at_sym("}") {
        loop {
            let (var, vat) = cur.expect_ident()?;
            let i = sctx.index_of(&var).ok_or_else(|| {
                Error::parse(vat.line, vat.column, format!("'{var}' is not a variable of {source}"))
            })?;
            if slots[i].is_some() {
                return Err(Error::parse(vat.line, vat.column, format!("'{var}' is assigned twice")));
            }
            cur.expect_sym("->")?;
            slots[i] = Some(cur.poly(&tctx)?);
            if !cur.eat_sym(",") {
                break;
            }
        }
    }
    cur.expect_sym("}")?;
    let missing: Vec<&str> = sctx
        .variables()
        .iter()
        .zip(&slots)
        .filter(|(_, s)| s.is_none())
        .map(|(v, _)| v.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(Error::parse(
            open.line,
            open.column,
            format!(
                "arity mismatch: {source} has {} variables, {} assigned (missing {})",
                sctx.nvars(),
                sctx.nvars() - missing.len(),
                missing.join(", ")
            ),
        ));
    }
    let assignments = sctx.variables().iter().cloned().zip(slots.into_iter().map(Option::unwrap)).collect();
    scope.define(&name, &at, Entry::Morphism { source: source.clone(), target: target.clone() })?;
    Ok(Statement::Morphism {
        name,
        source,
        target,
        assignments,
    })
}

fn keyword_of<T: Copy>(cur: &mut Cursor, all: &[T], key: impl Fn(T) -> &'static str, what: &str) -> Result<T> {
    let (word, at) = cur.expect_ident()?;
    all.iter().copied().find(|k| key(*k) == word).ok_or_else(|| {
        let options: Vec<&str> = all.iter().map(|k| key(*k)).collect();
        Error::parse(at.line, at.column, format!("unknown {what} '{word}' (expected one of {})", options.join(", ")))
    })
}

fn check(cur: &mut Cursor, scope: &Scope) -> Result<Statement> {
    let kind = keyword_of(cur, &CheckKind::ALL, CheckKind::keyword, "check")?;
    let (subject, sat) = cur.expect_ident()?;
    let (src, tgt) = scope.morphism(&subject, &sat)?;
    let mut with = Vec::new();
    if kind == CheckKind::Universal {
        cur.expect_keyword("with")?;
        let (psi, pat) = cur.expect_ident()?;
        let (psi_src, _) = scope.morphism(&psi, &pat)?;
        if psi_src != src {
            return Err(Error::parse(pat.line, pat.column, format!("{psi} must start at {src}")));
        }
        cur.expect_sym(",")?;
        let (psi2, qat) = cur.expect_ident()?;
        let (psi2_src, _) = scope.morphism(&psi2, &qat)?;
        if psi2_src != tgt {
            return Err(Error::parse(qat.line, qat.column, format!("{psi2} must start at {tgt}")));
        }
        with = vec![psi, psi2];
    }
    let level = level(cur)?;
    Ok(Statement::Check {
        kind,
        subject,
        with,
        level,
    })
}

fn bind_name(cur: &mut Cursor) -> Result<Option<(String, Token)>> {
    if cur.at_keyword("as") {
        cur.bump();
        return cur.expect_ident().map(Some);
    }
    Ok(None)
}

fn compute(cur: &mut Cursor, scope: &mut Scope) -> Result<Statement> {
    let kind = keyword_of(cur, &ComputeKind::ALL, ComputeKind::keyword, "computation")?;
    let (first, fat) = cur.expect_ident()?;
    let mut args = vec![first.clone()];
    let mut at_poly = None;
    // context of the bound ring and the (source, target) of each bound morphism
    let bound: (Arc<PolyContext>, Vec<(String, String)>);
    let ring_of = |scope: &Scope, name: &str| match scope.names.get(name) {
        Some(Entry::Ring(c)) => c.clone(),
        _ => unreachable!("resolved above"),
    };
    match kind {
        ComputeKind::Neighbourhood => {
            let (a, b) = scope.morphism(&first, &fat)?;
            bound = (ring_of(scope, &a), vec![(a, String::new()), (String::new(), b)]);
        }
        ComputeKind::Tensor => {
            let (a, b) = scope.morphism(&first, &fat)?;
            cur.expect_sym(",")?;
            let (second, sat) = cur.expect_ident()?;
            let (a2, ap) = scope.morphism(&second, &sat)?;
            if a2 != a {
                return Err(Error::parse(sat.line, sat.column, format!("{first} and {second} must share a source")));
            }
            args.push(second);
            let bctx = ring_of(scope, &b);
            let actx = ring_of(scope, &ap);
            let names = tensor_variable_names(bctx.variables(), actx.variables());
            let ctx = PolyContext::new(names, bctx.field()).map_err(|e| Error::parse(sat.line, sat.column, e.to_string()))?;
            bound = (ctx, vec![(b, String::new()), (ap, String::new())]);
        }
        ComputeKind::Localisation => {
            let actx = scope.ring(&first, &fat)?;
            cur.expect_keyword("at")?;
            cur.expect_sym("(")?;
            at_poly = Some(cur.poly(&actx)?);
            cur.expect_sym(")")?;
            let mut names = actx.variables().to_vec();
            names.push(actx.fresh_name("u"));
            let ctx = PolyContext::new(names, actx.field()).expect("fresh name");
            bound = (ctx, vec![(first.clone(), String::new())]);
        }
        ComputeKind::Diagonal => {
            let (_, b) = scope.morphism(&first, &fat)?;
            let bctx = ring_of(scope, &b);
            let names = tensor_variable_names(bctx.variables(), bctx.variables());
            let ctx = PolyContext::new(names, bctx.field()).expect("fresh names");
            bound = (ctx, vec![(String::new(), b)]);
        }
        ComputeKind::Truncation => {
            scope.ring(&first, &fat)?;
            bound = (ring_of(scope, &first), Vec::new());
        }
    }
    let level = level(cur)?;
    let bind = bind_name(cur)?;
    if let Some((name, at)) = &bind {
        if kind == ComputeKind::Truncation {
            return Err(Error::parse(at.line, at.column, "a truncation binds no name"));
        }
        scope.define(name, at, Entry::Ring(bound.0.clone()))?;
        for (suffix, (src, tgt)) in kind.bound_morphisms().iter().zip(bound.1) {
            // the empty end is the bound ring itself
            let src = if src.is_empty() { name.clone() } else { src };
            let tgt = if tgt.is_empty() { name.clone() } else { tgt };
            scope.define(&format!("{name}_{suffix}"), at, Entry::Morphism { source: src, target: tgt })?;
        }
    }
    Ok(Statement::Compute {
        kind,
        args,
        at: at_poly,
        level,
        bind: bind.map(|(n, _)| n),
    })
}

fn set(cur: &mut Cursor) -> Result<Statement> {
    let (name, at) = cur.expect_ident()?;
    let option = match name.as_str() {
        "cap" => SessionOption::Cap,
        "budget" => SessionOption::Budget,
        other => return Err(Error::parse(at.line, at.column, format!("unknown option '{other}' (expected cap or budget)"))),
    };
    cur.expect_sym("=")?;
    let value = small_int(cur, "option value")?;
    Ok(Statement::Set { option, value })
}
