//! Canonical printer. `parse(print(f)) == f` for every core AST `f`;
//! derived connectives (`|`, `->`, `<->`, `exists`) are re-sugared when the
//! core AST matches their desugaring exactly.

use super::Formula;
use Formula::*;

/// Sugared view of a core node.
enum View<'a> {
    Iff(&'a Formula, &'a Formula),
    Implies(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    Exists(&'a str, &'a Formula),
    Core(&'a Formula),
}

/// Match `¬(¬φ ∧ ¬ψ)` and return `(φ, ψ)`.
fn as_or(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Not(g) = f {
        if let And(l, r) = &**g {
            if let (Not(a), Not(b)) = (&**l, &**r) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Match `φ ⇒ ψ`, i.e. `¬φ ∨ ψ`.
fn as_implies(f: &Formula) -> Option<(&Formula, &Formula)> {
    let (l, r) = as_or(f)?;
    if let Not(a) = l {
        Some((a, r))
    } else {
        None
    }
}

fn view(f: &Formula) -> View<'_> {
    if let And(l, r) = f {
        if let (Some((a, b)), Some((c, d))) = (as_implies(l), as_implies(r)) {
            if a == d && b == c {
                return View::Iff(a, b);
            }
        }
    }
    if let Some((a, b)) = as_implies(f) {
        return View::Implies(a, b);
    }
    if let Some((a, b)) = as_or(f) {
        return View::Or(a, b);
    }
    if let Not(g) = f {
        if let Forall(v, body) = &**g {
            if let Not(inner) = &**body {
                return View::Exists(v, inner);
            }
        }
    }
    View::Core(f)
}

/// Precedence of the printed form: 0 iff/quantifier, 1 implies, 2 or,
/// 3 and, 4 unary/atom.
fn prec(f: &Formula) -> u8 {
    match view(f) {
        View::Iff(..) => 0,
        View::Implies(..) => 1,
        View::Or(..) => 2,
        View::Exists(..) => 0,
        View::Core(g) => match g {
            And(..) => 3,
            Forall(..) => 0,
            _ => 4,
        },
    }
}

fn emit(f: &Formula, min: u8, out: &mut String) {
    let parens = prec(f) < min;
    if parens {
        out.push('(');
    }
    match view(f) {
        View::Iff(a, b) => {
            emit(a, 1, out);
            out.push_str(" <-> ");
            emit(b, 1, out);
        }
        View::Implies(a, b) => {
            emit(a, 2, out);
            out.push_str(" -> ");
            emit(b, 1, out);
        }
        View::Or(a, b) => {
            emit(a, 2, out);
            out.push_str(" | ");
            emit(b, 3, out);
        }
        View::Exists(v, body) => emit_quant("exists", v, body, out),
        View::Core(g) => match g {
            Prop(p) => out.push_str(p),
            Var(v) => {
                out.push('?');
                out.push_str(v);
            }
            Not(h) => {
                out.push('!');
                emit(h, 4, out);
            }
            And(l, r) => {
                emit(l, 3, out);
                out.push_str(" & ");
                emit(r, 4, out);
            }
            K(i, h) => emit_modal('K', *i, h, out),
            A(i, h) => emit_modal('A', *i, h, out),
            X(i, h) => emit_modal('X', *i, h, out),
            Forall(v, body) => emit_quant("forall", v, body, out),
        },
    }
    if parens {
        out.push(')');
    }
}

fn emit_modal(op: char, i: u32, body: &Formula, out: &mut String) {
    out.push(op);
    out.push_str(&i.to_string());
    out.push(' ');
    emit(body, 4, out);
}

fn emit_quant(kw: &str, v: &str, body: &Formula, out: &mut String) {
    out.push_str(kw);
    out.push_str(" ?");
    out.push_str(v);
    out.push_str(" . ");
    if prec(body) == 4 {
        emit(body, 4, out);
    } else {
        out.push('(');
        emit(body, 0, out);
        out.push(')');
    }
}

/// Canonical text of a formula.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    emit(f, 0, &mut out);
    out
}
