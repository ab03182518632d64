// Running a verification suite, rendering its report and diffing two runs.

use mu_tau::config::RunConfig;
use mu_tau::report::{diff, Format, Report};
use mu_tau::verify::{run_suite, Summary};
use mu_tau::Result;

pub fn run_example() -> Result<()> {
    let mut cfg = RunConfig::default();
    cfg.set("suite", "propagation")?;
    cfg.set("grid", "1")?;
    let records = run_suite(&cfg.suite, &cfg.suite_options())?;
    println!("{:?}", Summary::of(&records));

    let report = Report::new(cfg.header_pairs(), records);
    let text = report.render(Format::Text);
    for line in text.lines().take(cfg.header_pairs().len() + 3) {
        println!("{line}");
    }

    // Tightening the tolerance flags every record whose outcome changes.
    cfg.set("tol", "1e-12")?;
    let strict = Report::new(
        cfg.header_pairs(),
        run_suite(&cfg.suite, &cfg.suite_options())?,
    );
    let parsed = Report::parse(&report.render(Format::Csv))?;
    let changes = diff(&parsed, &strict);
    println!(
        "{} records changed; first: {}",
        changes.len(),
        changes.first().map(|c| c.describe()).unwrap_or_default()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verify report example");
}
