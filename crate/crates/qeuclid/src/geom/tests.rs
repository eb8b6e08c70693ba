use super::*;

fn assert_all(checks: &[Check]) {
    let bad: Vec<String> =
        checks.iter().filter(|c| !c.ok()).map(|c| format!("{}: {}", c.id, c.residual.as_deref().unwrap_or(""))).collect();
    assert!(bad.is_empty(), "{} failing:\n{}", bad.len(), bad.join("\n"));
}

#[test]
fn frame_suite() {
    assert_all(&frame_checks(&Geometry::default(), &Selection::default()));
}

#[test]
fn lambda_suite() {
    assert_all(&lambda_checks(&Geometry::default()));
}

#[test]
fn rtt_suite() {
    assert_all(&rtt_checks(&Geometry::default()));
}

#[test]
fn torsion_suite() {
    assert_all(&torsion_checks(&Geometry::default(), &Selection::default()));
}

#[test]
fn curvature_suite() {
    assert_all(&curvature_checks(&Geometry::default(), &Selection::default()));
}

#[test]
fn metric_compat_suite() {
    assert_all(&metric_compat_checks(&Geometry::default(), &Selection::default()));
}

#[test]
fn reality_suite() {
    assert_all(&reality_checks(&Geometry::default(), &Selection::default()));
}

#[test]
fn ds2_suite() {
    assert_all(&ds2_checks(&Geometry::default()));
}

#[test]
fn partials_suite() {
    assert_all(&partials_checks(&Geometry::default(), 3));
}
