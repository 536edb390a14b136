use std::path::PathBuf;

use clap::Args;
use octonic::algebra::{Basis, ProductTable};
use octonic::exec::Execution;
use octonic::report::Status;
use octonic::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};

use crate::{output_path, usage_error};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// algebra, operators, eigen, representations, transforms, dynamics, fields or all.
    pub suite: Suite,
    /// Report path; defaults to verify-<suite>.ndjson in $OCTONIC_OUT_DIR or the working directory.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Run every check on the calling thread.
    #[arg(long)]
    pub sequential: bool,
    /// Negate one product-table cell, given as `left,right` labels, before verifying.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

fn parse_fault(s: &str) -> (Basis, Basis) {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [l, r] => match (Basis::from_label(l), Basis::from_label(r)) {
            (Some(l), Some(r)) => (l, r),
            _ => usage_error(format!("unknown basis label in {s:?}")),
        },
        _ => usage_error(format!("expected `left,right`, got {s:?}")),
    }
}

pub fn run(a: VerifyArgs) -> Result<bool, String> {
    let mut table = ProductTable::printed();
    if let Some(f) = &a.inject_fault {
        let (l, r) = parse_fault(f);
        table = table.with_sign_flip(l, r);
    }
    let exec = if a.sequential { Execution::Sequential } else { Execution::best() };
    let opts = VerifyOptions { seed: a.seed, table, exec };
    let report = run_suite(a.suite, &opts);

    let path = output_path(a.json, &format!("verify-{}.ndjson", a.suite));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    }
    report.save(&path).map_err(|e| format!("{}: {e}", path.display()))?;

    for c in report.checks.iter().filter(|c| c.status != Status::Pass) {
        let tag = if c.status == Status::Fail { "FAIL" } else { "FLAG" };
        println!("{tag} {} residual={:e} tolerance={:e}", c.id, c.residual, c.tolerance);
        if let Some(ce) = &c.counterexample {
            println!("     {ce}");
        }
    }
    let s = report.summary();
    println!(
        "{}: {} checks, {} passed, {} flagged, {} failed (seed {}); report {}",
        a.suite,
        s.total,
        s.passed,
        s.flagged,
        s.failed,
        a.seed,
        path.display()
    );
    Ok(report.passed())
}
