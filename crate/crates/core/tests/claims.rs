use autgate::claims::{selfcheck, ClaimStatus};

#[test]
fn selfcheck_reports_every_reference_value() {
    let checks = selfcheck();
    for c in &checks {
        eprintln!("{:?} {} | {} | {}", c.status, c.id, c.expected, c.computed);
    }
    let flagged: Vec<_> = checks.iter().filter(|c| c.status == ClaimStatus::Flagged).map(|c| c.id.as_str()).collect();
    assert_eq!(flagged, ["aut_15_4"]);
    let mismatched: Vec<_> = checks.iter().filter(|c| c.status == ClaimStatus::Mismatch).map(|c| c.id.as_str()).collect();
    assert_eq!(mismatched, ["identity_diagonal_one_block_gf4"]);
}
