//! Checks a reduction instance against exact solvers on both sides.

use std::fmt;

use crate::graph::Vertex;
use crate::solvers::{
    solve_with, validate, Instance, Problem, Solution, SolveError, SolveOptions, Verdict,
};

use super::ReductionArtifact;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// `opt(output) = a * opt(input) + b`.
    OptimumEquality,
    /// `input has a solution of size <= k` iff `output has one of size <= k'`.
    DecisionEquivalence { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub reduction: &'static str,
    pub target: Problem,
    pub mode: VerifyMode,
    /// Optimum, or 1/0 for yes/no in decision mode.
    pub input_value: Option<usize>,
    pub output_value: Option<usize>,
    pub predicted: Option<i64>,
    /// The output decision was settled by the lifted certificate instead of a search.
    pub certified_by_lift: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decision = matches!(self.mode, VerifyMode::DecisionEquivalence { .. });
        let show = |v: Option<usize>| match v {
            None => "-".to_string(),
            Some(x) if decision => if x == 1 { "yes" } else { "no" }.to_string(),
            Some(x) => x.to_string(),
        };
        let mode = match self.mode {
            VerifyMode::OptimumEquality => "optimum".to_string(),
            VerifyMode::DecisionEquivalence { k } => format!("decision k={k}"),
        };
        write!(
            f,
            "{} ({}, {}): input {} output {} predicted {}",
            self.reduction,
            self.target,
            mode,
            show(self.input_value),
            show(self.output_value),
            self.predicted.map_or("-".to_string(), |p| p.to_string())
        )?;
        if self.certified_by_lift {
            f.write_str(" [output by lifted certificate]")?;
        }
        if self.passed() {
            f.write_str(" ok")
        } else {
            write!(f, " FAILED: {}", self.failures.join("; "))
        }
    }
}

/// Verifies against the artifact's own output problem.
pub fn verify_reduction(
    art: &ReductionArtifact,
    mode: VerifyMode,
    opts: &SolveOptions,
) -> Result<VerificationReport, SolveError> {
    verify_reduction_as(art, art.output_problem, mode, opts)
}

/// Verifies with an explicit output problem (the path gadget serves both
/// feedback vertex set and feedback arc set).
pub fn verify_reduction_as(
    art: &ReductionArtifact,
    target: Problem,
    mode: VerifyMode,
    opts: &SolveOptions,
) -> Result<VerificationReport, SolveError> {
    let input = Instance::new(art.input.clone(), art.input_problem)?;
    let output = Instance::new(art.output.clone(), target)?;
    let mut report = VerificationReport {
        reduction: art.name,
        target,
        mode,
        input_value: None,
        output_value: None,
        predicted: None,
        certified_by_lift: false,
        failures: Vec::new(),
    };
    match mode {
        VerifyMode::OptimumEquality => optimum(art, &input, &output, opts, &mut report)?,
        VerifyMode::DecisionEquivalence { k } => {
            decision(art, &input, &output, k, opts, &mut report)?
        }
    }
    Ok(report)
}

fn check_lift(
    art: &ReductionArtifact,
    output: &Instance,
    s: &[Vertex],
    max: i64,
    exact: bool,
    report: &mut VerificationReport,
) -> Option<Solution> {
    match art.lift_as(s, output.problem) {
        Ok(lifted) => {
            let feasible = validate(output, &lifted)
                .map(|v| v.feasible)
                .unwrap_or(false);
            if !feasible {
                report.failures.push(format!("lift of {s:?} is infeasible"));
            }
            let size = lifted.len() as i64;
            if (exact && size != max) || size > max {
                report
                    .failures
                    .push(format!("lift of {s:?} has size {size}, expected {max}"));
            }
            Some(lifted)
        }
        Err(e) => {
            report.failures.push(format!("lift failed: {e}"));
            None
        }
    }
}

fn check_project(
    art: &ReductionArtifact,
    input: &Instance,
    s: &Solution,
    max: usize,
    report: &mut VerificationReport,
) {
    match art.project(s) {
        Ok(back) => {
            let sol = Solution::vertices(back);
            let feasible = validate(input, &sol).map(|v| v.feasible).unwrap_or(false);
            if !feasible {
                report
                    .failures
                    .push(format!("projection {:?} is infeasible", sol.ids()));
            }
            if sol.len() > max {
                report
                    .failures
                    .push(format!("projection {:?} exceeds {max}", sol.ids()));
            }
        }
        Err(e) => report.failures.push(format!("projection failed: {e}")),
    }
}

fn optimum(
    art: &ReductionArtifact,
    input: &Instance,
    output: &Instance,
    opts: &SolveOptions,
    report: &mut VerificationReport,
) -> Result<(), SolveError> {
    let a = solve_with(input, opts)?;
    let b = solve_with(output, opts)?;
    report.input_value = a.value();
    report.output_value = b.value();
    match (a.verdict, b.verdict) {
        (Verdict::Optimal(x), Verdict::Optimal(y)) => {
            let predicted = art.budget.apply(x);
            report.predicted = Some(predicted);
            if y as i64 != predicted {
                report
                    .failures
                    .push(format!("output optimum {y}, predicted {predicted}"));
            }
            if let Some(cert) = &a.certificate {
                check_lift(art, output, cert.ids(), predicted, true, report);
            }
            if let Some(cert) = &b.certificate {
                check_project(art, input, cert, x, report);
            }
        }
        (Verdict::Infeasible, Verdict::Infeasible) => {}
        (x, y) => report
            .failures
            .push(format!("verdicts differ: input {x:?}, output {y:?}")),
    }
    Ok(())
}

fn decision(
    art: &ReductionArtifact,
    input: &Instance,
    output: &Instance,
    k: usize,
    opts: &SolveOptions,
    report: &mut VerificationReport,
) -> Result<(), SolveError> {
    let a = solve_with(&input.clone().with_budget(k), opts)?;
    let yes_in = a.is_yes();
    report.input_value = Some(yes_in as usize);
    let kk = art.budget.apply(k);
    report.predicted = Some(kk);
    let lifted = match &a.certificate {
        Some(cert) if yes_in => check_lift(art, output, cert.ids(), kk, false, report),
        _ => None,
    };
    let yes_out = if kk < 0 {
        false
    } else {
        match solve_with(&output.clone().with_budget(kk as usize), opts) {
            Ok(b) => {
                if let Some(cert) = &b.certificate {
                    check_project(art, input, cert, k, report);
                }
                b.is_yes()
            }
            Err(SolveError::Envelope { detail }) => {
                // beyond the search envelope only a yes answer can be certified
                let Some(lifted) = lifted.filter(|_| yes_in) else {
                    return Err(SolveError::Envelope { detail });
                };
                report.certified_by_lift = true;
                let ok = validate(output, &lifted)
                    .map(|v| v.feasible)
                    .unwrap_or(false)
                    && lifted.len() as i64 <= kk;
                if ok {
                    check_project(art, input, &lifted, k, report);
                }
                ok
            }
            Err(e) => return Err(e),
        }
    };
    report.output_value = Some(yes_out as usize);
    if yes_in != yes_out {
        report.failures.push(format!(
            "input answer {yes_in}, output answer {yes_out} at k' = {kk}"
        ));
    }
    Ok(())
}
