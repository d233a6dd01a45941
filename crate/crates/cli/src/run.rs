//! Executes parsed scripts.

use std::collections::BTreeMap;

use grasper_core::syntax::{RingAst, WordAst};
use grasper_core::{
    diffeo_equal, eval_diffeo_expr, BarWord, BarbellSpec, Certificate, DiffeoExpr,
    ReductionContext, Result, RingElement, ThetaData,
};

use crate::report::{Record, Report, Status};
use crate::script::{let_bindings, parse_script, Check, ExprAst, Script, StmtKind};

struct Env<'a> {
    rctx: ReductionContext,
    lets: &'a BTreeMap<String, RingAst>,
}

impl Env<'_> {
    fn ring(&self, r: &RingAst) -> Result<RingElement> {
        r.eval(self.rctx.ctx(), self.lets)
    }

    fn lower(&self, e: &ExprAst) -> Result<DiffeoExpr> {
        Ok(match e {
            ExprAst::Id => DiffeoExpr::Identity,
            ExprAst::Wat(a, b) => {
                let ctx = self.rctx.ctx();
                DiffeoExpr::Wat(ThetaData::new(
                    a.eval_word(ctx, self.lets)?,
                    b.eval_word(ctx, self.lets)?,
                )?)
            }
            ExprAst::Bg { word, knotted1 } => DiffeoExpr::Bg(self.barbell(word, *knotted1)?),
            ExprAst::Sref(v, r) => DiffeoExpr::Sref(*v, self.ring(r)?),
            ExprAst::PsR(r) => DiffeoExpr::PsR(self.ring(r)?),
            ExprAst::Compose(parts) => {
                DiffeoExpr::Compose(parts.iter().map(|p| self.lower(p)).collect::<Result<_>>()?)
            }
            ExprAst::Inverse(inner) => DiffeoExpr::inverse(self.lower(inner)?),
            ExprAst::Power(inner, n) => DiffeoExpr::power(self.lower(inner)?, *n),
        })
    }

    fn barbell(&self, word: &WordAst, knotted1: bool) -> Result<BarbellSpec> {
        let w = word.eval_word(&self.rctx.bar_ctx(), self.lets)?;
        Ok(BarbellSpec {
            bar_word: BarWord::new(w)?,
            cuff1_unknotted: !knotted1,
            cuff2_unknotted: true,
        })
    }

    fn check(&self, name: &str, check: &Check) -> Result<Record> {
        match check {
            Check::Diffeo(a, b) => {
                let cert = diffeo_equal(&self.lower(a)?, &self.lower(b)?, &self.rctx)?;
                Ok(match cert {
                    Certificate::CertifiedEqual { lhs, rhs } => Record::new(name, Status::Pass)
                        .sides(lhs, rhs)
                        .details("certified equal"),
                    Certificate::NotCertified { lhs, rhs } => Record::new(name, Status::Fail)
                        .sides(lhs, rhs)
                        .details("normal forms differ; equality is not certified"),
                })
            }
            Check::Ring(a, b) => {
                let ca = self.rctx.reduce(&self.ring(a)?)?;
                let cb = self.rctx.reduce(&self.ring(b)?)?;
                let status = if ca == cb { Status::Pass } else { Status::Fail };
                Ok(Record::new(name, status).sides(ca.to_string(), cb.to_string()))
            }
        }
    }
}

/// Runs every statement of a parsed script; evaluation errors become
/// `error` records and do not stop later statements.
pub fn run(script: &Script, suite: &str) -> Report {
    let lets = let_bindings(script);
    let mut env: Option<Env> = None;
    let mut results = Vec::new();
    for stmt in &script.statements {
        let name = format!("{}: {}", stmt.line, stmt.text);
        let outcome = match &stmt.kind {
            StmtKind::Manifold(rctx) => {
                env = Some(Env {
                    rctx: rctx.clone(),
                    lets: &lets,
                });
                continue;
            }
            StmtKind::Let(..) => continue,
            kind => {
                let env = env.as_ref().expect("the parser requires a manifold first");
                match kind {
                    StmtKind::Check(c) => env.check(&name, c),
                    StmtKind::Reduce(r) => env.ring(r).and_then(|x| {
                        let c = env.rctx.reduce(&x)?;
                        Ok(Record::new(&name, Status::Pass).sides(x.to_string(), c.to_string()))
                    }),
                    StmtKind::Eval(e) => env.lower(e).and_then(|d| {
                        let nf = eval_diffeo_expr(&d, &env.rctx)?;
                        Ok(Record::new(&name, Status::Pass)
                            .sides(nf.manifold_tag.clone(), nf.to_string())
                            .details(format!("{} route(s)", nf.routes.len())))
                    }),
                    StmtKind::Manifold(_) | StmtKind::Let(..) => unreachable!(),
                }
            }
        };
        results.push(outcome.unwrap_or_else(|e| Record::error(&name, &e)));
    }
    Report::new(suite, results)
}

pub fn run_script(source: &str) -> Result<Report> {
    Ok(run(&parse_script(source)?, "script"))
}
