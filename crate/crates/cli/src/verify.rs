//! The `verify` command: machine-checks every cross-evaluator identity on
//! the given problem (if any) and on seeded random rational problems.
//!
//! The report is deterministic for a fixed seed — no timing, no ordering
//! wobble — so reruns are byte-identical and the exit code is CI-friendly:
//! 0 iff every identity holds exactly.
//!
//! `--inject chain-monomial` deliberately perturbs one monomial inside the
//! subset-enumeration route (the empty chain's coefficient is doubled) to
//! demonstrate that the harness catches a broken evaluator and names the
//! violated identity.

use chainrec_core::chainsum::{
    phi_binary, phi_chain, phi_dp, prefix_sum_closed_form, psi_dp, term_closed_form, PhiRequest,
    DEFAULT_EXPONENTIAL_CAP,
};
use chainrec_core::random::{random_problem, seeded_rng};
use chainrec_core::recurrence::{eval_direct, eval_homogeneous_shifted};
use chainrec_core::vectorproof::{build_w, build_w_expanded, DEFAULT_VECTOR_CAP};
use chainrec_core::{Problem, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Double the empty-chain monomial inside the subset-enumeration route
    ChainMonomial,
}

pub struct Options {
    pub max_n: u32,
    pub trials: u32,
    pub seed: u64,
    pub inject: Option<Fault>,
    pub problem: Option<Problem>,
}

pub struct Outcome {
    pub report: String,
    pub all_pass: bool,
}

struct Instance {
    label: String,
    problem: Problem,
}

type CheckResult = Result<(), String>;

fn fail(message: String) -> CheckResult {
    Err(message)
}

/// The subset-enumeration route, optionally perturbed by the injected fault.
fn chain_route(request: &PhiRequest, inject: Option<Fault>) -> Result<Scalar, String> {
    let value = phi_chain(request).map_err(|e| e.to_string())?;
    match inject {
        Some(Fault::ChainMonomial) if request.n() >= 1 => value
            .add(&Scalar::one(request.source().realization()))
            .map_err(|e| e.to_string()),
        _ => Ok(value),
    }
}

fn check_closed_prefix(instances: &[Instance]) -> CheckResult {
    for instance in instances {
        let direct = eval_direct(&instance.problem).map_err(|e| e.to_string())?;
        for n in 1..=instance.problem.horizon() {
            let closed =
                prefix_sum_closed_form(&instance.problem, n).map_err(|e| e.to_string())?;
            if closed != direct.prefix[n as usize] {
                return fail(format!(
                    "{}, n = {n}: closed form = {closed}, direct prefix = {}",
                    instance.label, direct.prefix[n as usize]
                ));
            }
        }
    }
    Ok(())
}

fn check_closed_term(instances: &[Instance]) -> CheckResult {
    for instance in instances {
        let direct = eval_direct(&instance.problem).map_err(|e| e.to_string())?;
        for n in 1..=instance.problem.horizon() {
            let closed = term_closed_form(&instance.problem, n).map_err(|e| e.to_string())?;
            if closed != direct.terms[n as usize] {
                return fail(format!(
                    "{}, n = {n}: closed form = {closed}, direct term = {}",
                    instance.label, direct.terms[n as usize]
                ));
            }
        }
    }
    Ok(())
}

fn check_phi_triple(instances: &[Instance], exp_limit: u32, inject: Option<Fault>) -> CheckResult {
    for instance in instances {
        let source = instance.problem.coefficients();
        for n in 0..=instance.problem.horizon().min(exp_limit) {
            let request = PhiRequest::new(n, source.clone());
            let by_binary = phi_binary(&request).map_err(|e| e.to_string())?;
            let by_chain = chain_route(&request, inject)?;
            let by_dp = phi_dp(&request).map_err(|e| e.to_string())?;
            if by_binary != by_chain || by_chain != by_dp {
                return fail(format!(
                    "{}, n = {n}: binary = {by_binary}, chain = {by_chain}, dp = {by_dp}",
                    instance.label
                ));
            }
        }
    }
    Ok(())
}

fn check_remark_identity(
    instances: &[Instance],
    exp_limit: u32,
    inject: Option<Fault>,
) -> CheckResult {
    for instance in instances {
        let horizon = instance.problem.horizon();
        let source = instance.problem.coefficients();
        for shift in 0..=horizon {
            let top = (horizon - shift).min(exp_limit) as usize;
            let v = eval_homogeneous_shifted(source, shift, top).map_err(|e| e.to_string())?;
            let shifted = source.shifted(shift);
            let mut v_prefix = Scalar::zero(instance.problem.realization());
            for (m, v_m) in v.iter().enumerate() {
                v_prefix = v_prefix.add(v_m).map_err(|e| e.to_string())?;
                let request = PhiRequest::new(m as u32, shifted.clone());
                let phi = chain_route(&request, inject)?;
                if phi != v_prefix {
                    return fail(format!(
                        "{}, shift = {shift}, order = {m}: phi = {phi}, homogeneous prefix = {v_prefix}",
                        instance.label
                    ));
                }
                let psi = psi_dp(&request).map_err(|e| e.to_string())?;
                if psi != *v_m {
                    return fail(format!(
                        "{}, shift = {shift}, order = {m}: psi = {psi}, homogeneous term = {v_m}",
                        instance.label
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_vectors(instances: &[Instance], exp_limit: u32) -> [CheckResult; 3] {
    let mut l1_result: CheckResult = Ok(());
    let mut block_result: CheckResult = Ok(());
    let mut expanded_result: CheckResult = Ok(());
    'outer: for instance in instances {
        let direct = match eval_direct(&instance.problem) {
            Ok(direct) => direct,
            Err(e) => {
                let message = format!("{}: {e}", instance.label);
                return [Err(message.clone()), Err(message.clone()), Err(message)];
            }
        };
        for n in 1..=instance.problem.horizon().min(exp_limit) {
            let state = match build_w(&instance.problem, n) {
                Ok(state) => state,
                Err(e) => {
                    let message = format!("{}, n = {n}: {e}", instance.label);
                    l1_result = l1_result.and(Err(message.clone()));
                    block_result = block_result.and(Err(message.clone()));
                    expanded_result = expanded_result.and(Err(message));
                    break 'outer;
                }
            };
            if l1_result.is_ok() {
                let total = state.l1().map_err(|e| e.to_string());
                match total {
                    Ok(total) if total == direct.prefix[n as usize] => {}
                    Ok(total) => {
                        l1_result = fail(format!(
                            "{}, n = {n}: entry sum = {total}, prefix = {}",
                            instance.label, direct.prefix[n as usize]
                        ));
                    }
                    Err(e) => l1_result = fail(format!("{}, n = {n}: {e}", instance.label)),
                }
            }
            if block_result.is_ok() {
                for j in 0..=n {
                    match state.block_sum(j) {
                        Ok(sum) if sum == direct.terms[j as usize] => {}
                        Ok(sum) => {
                            block_result = fail(format!(
                                "{}, n = {n}, block {j}: sum = {sum}, term = {}",
                                instance.label, direct.terms[j as usize]
                            ));
                            break;
                        }
                        Err(e) => {
                            block_result =
                                fail(format!("{}, n = {n}, block {j}: {e}", instance.label));
                            break;
                        }
                    }
                }
            }
            if expanded_result.is_ok() {
                match build_w_expanded(&instance.problem, n) {
                    Ok(expanded) if expanded == state => {}
                    Ok(_) => {
                        expanded_result = fail(format!(
                            "{}, n = {n}: expanded construction differs entrywise",
                            instance.label
                        ));
                    }
                    Err(e) => {
                        expanded_result = fail(format!("{}, n = {n}: {e}", instance.label));
                    }
                }
            }
        }
    }
    [l1_result, block_result, expanded_result]
}

pub fn run(options: &Options) -> Outcome {
    let mut instances = Vec::new();
    if let Some(problem) = &options.problem {
        instances.push(Instance {
            label: "spec problem".into(),
            problem: problem.clone(),
        });
    }
    let mut rng = seeded_rng(options.seed);
    for trial in 0..options.trials {
        let horizon = 1 + trial % options.max_n.max(1);
        instances.push(Instance {
            label: format!("trial {trial}"),
            problem: random_problem(&mut rng, horizon),
        });
    }

    let exp_limit = DEFAULT_EXPONENTIAL_CAP.min(DEFAULT_VECTOR_CAP);
    let clamped = instances
        .iter()
        .any(|i| i.problem.horizon() > exp_limit);

    let mut report = format!(
        "cross-verifying {} random problems (seed {}, max n {}){}\n",
        options.trials,
        options.seed,
        options.max_n,
        if options.problem.is_some() {
            " plus the spec problem"
        } else {
            ""
        }
    );
    if clamped {
        report.push_str(&format!(
            "note: exponential-route checks are clamped to n <= {exp_limit}\n"
        ));
    }
    if options.inject.is_some() {
        report.push_str("note: fault injection is active (chain-monomial)\n");
    }

    let [vector_l1, vector_blocks, vector_expanded] = check_vectors(&instances, exp_limit);
    let named: Vec<(&str, CheckResult)> = vec![
        ("prefix-closed-form", check_closed_prefix(&instances)),
        ("term-closed-form", check_closed_term(&instances)),
        (
            "phi-triple-equivalence",
            check_phi_triple(&instances, exp_limit, options.inject),
        ),
        (
            "remark-identity",
            check_remark_identity(&instances, exp_limit, options.inject),
        ),
        ("vector-l1", vector_l1),
        ("vector-block-structure", vector_blocks),
        ("vector-expanded", vector_expanded),
    ];

    let mut failures = 0;
    for (name, result) in &named {
        match result {
            Ok(()) => report.push_str(&format!("  {name:<24} PASS\n")),
            Err(counterexample) => {
                failures += 1;
                report.push_str(&format!("  {name:<24} FAIL  {counterexample}\n"));
            }
        }
    }
    if failures == 0 {
        report.push_str(&format!("result: PASS ({} identities hold exactly)\n", named.len()));
    } else {
        report.push_str(&format!(
            "result: FAIL ({failures} of {} identities violated)\n",
            named.len()
        ));
    }
    Outcome {
        report,
        all_pass: failures == 0,
    }
}
