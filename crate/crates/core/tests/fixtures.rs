mod common;

use common::{c, fixture, CTX};
use num_complex::Complex64;
use sicpovm::constructions::bicyclic::{bicyclic_basis_d3, BicyclicSolution};
use sicpovm::constructions::weyl::{fiducial_d2, fiducial_d3, search_fiducial_d2};
use sicpovm::io::{LoadedSet, VectorSetFile, WireScalar};
use sicpovm::{CVector, CycloNumber, LineSet};

fn render<S: WireScalar>(name: &str, ctx: &S::Context, vectors: Vec<CVector<S>>) -> String {
    let set = LineSet::new(ctx, vectors, name).unwrap();
    let mut text = serde_json::to_string_pretty(&VectorSetFile::from_set(ctx, &set).unwrap()).unwrap();
    text.push('\n');
    text
}

fn golden<S: WireScalar>(name: &str, ctx: &S::Context, vectors: Vec<CVector<S>>) {
    let path = fixture(&format!("{name}.json"));
    let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(on_disk, render(name, ctx, vectors.clone()), "{name} is stale; rerun the write_fixtures example");
    let loaded = VectorSetFile::parse(&on_disk).unwrap().load().unwrap();
    assert_eq!(loaded.len(), vectors.len());
}

#[test]
fn fixtures_match_generators() {
    golden("weyl-d2-fiducial-exact", &CTX, vec![fiducial_d2::<CycloNumber>(&CTX).unwrap()]);
    golden("weyl-d2-fiducial-float", &(), vec![search_fiducial_d2()]);
    golden("weyl-d3-fiducial-exact", &CTX, vec![fiducial_d3::<CycloNumber>(&CTX).unwrap()]);
    golden("weyl-d3-fiducial-float", &(), vec![fiducial_d3::<Complex64>(&()).unwrap()]);
    golden("stabilizer-d2", &(), vec![CVector::<Complex64>::basis(2, 0)]);
    golden(
        "basis-d3-reference",
        &CTX,
        bicyclic_basis_d3::<CycloNumber>(&CTX, &BicyclicSolution::reference()).unwrap(),
    );
    golden(
        "basis-d3-real",
        &CTX,
        bicyclic_basis_d3::<CycloNumber>(&CTX, &BicyclicSolution::totally_real()).unwrap(),
    );
    let h = 3f64.sqrt() / 2.0;
    golden(
        "triangle-r2",
        &(),
        vec![
            CVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            CVector::new(vec![c(0.5, 0.0), c(h, 0.0)]),
            CVector::new(vec![c(-0.5, 0.0), c(h, 0.0)]),
        ],
    );
}

#[test]
fn exact_fixtures_load_exactly() {
    let text = std::fs::read_to_string(fixture("basis-d3-reference.json")).unwrap();
    match VectorSetFile::parse(&text).unwrap().load().unwrap() {
        LoadedSet::Exact(set, ctx) => {
            assert_eq!(ctx, CTX);
            assert_eq!(
                set.vectors,
                bicyclic_basis_d3::<CycloNumber>(&CTX, &BicyclicSolution::reference()).unwrap()
            );
        }
        LoadedSet::Float(_) => panic!("expected an exact file"),
    }
}
