//! Runs every verification suite at its smallest rank and prints the
//! reports.
use fgaut::harness::{emit_report, run, ReportFormat, Suite};

fn main() -> fgaut::error::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let mut failed = 0;
    for s in Suite::ALL {
        let r = run(s, s.min_rank(), s.default_trials(), seed)?;
        failed += r.failed;
        print!("{}", emit_report(&r, ReportFormat::Text));
    }
    println!("{failed} failed trials");
    Ok(())
}
