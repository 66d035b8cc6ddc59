use super::*;

fn suite(scope: Scope) -> Suite {
    Suite::new(256, QuadratureScheme::default(), AnnulusConfig::default(), scope)
}

#[test]
fn disk_scope_passes_its_checks_and_skips_the_rest() {
    let mut s = suite(Scope::Domain(DomainSpec::Disk));
    let out = s.run();
    assert_eq!(out.len(), 11);
    for o in &out {
        let want = if [1, 2, 3].contains(&o.criterion) { Status::Pass } else { Status::Skip };
        assert_eq!(o.status, want, "{o}");
    }
    let twelve = determinism(&mut suite(Scope::Domain(DomainSpec::Disk)), &out);
    assert_eq!(twelve.status, Status::Pass);
}

#[test]
fn rendering_is_one_line_per_outcome() {
    let o = Outcome { criterion: 3, title: "x", status: Status::Fail, detail: "d".into() };
    assert_eq!(render(&[o.clone(), o.clone()]), "criterion  3 FAIL x: d\ncriterion  3 FAIL x: d\n");
    assert_eq!(table(&[o]).to_csv(), "criterion,status,title,detail\n3,FAIL,x,d\n");
}

#[test]
fn a_failing_domain_fails_the_criterion() {
    let mut s = suite(Scope::Catalog);
    let o = s.criterion(99, "probe", &[DomainSpec::Disk, DomainSpec::Lens], |_, spec| {
        Ok((*spec == DomainSpec::Disk, "measured".into()))
    });
    assert_eq!(o.status, Status::Fail);
    assert_eq!(o.detail, "disk: measured; lens: measured");
    let o = s.criterion(98, "probe", &[DomainSpec::Disk], |_, _| Err(Error::NotInOmegaStar));
    assert_eq!(o.status, Status::Fail);
}
