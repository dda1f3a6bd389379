//! Regenerates the files under `fixtures/`.
//!
//! ```text
//! cargo run -p sicpovm --example write_fixtures
//! ```

use std::path::Path;

use num_complex::Complex64;
use sicpovm::constructions::bicyclic::{bicyclic_basis_d3, BicyclicSolution};
use sicpovm::constructions::weyl::{fiducial_d2, fiducial_d3, search_fiducial_d2};
use sicpovm::io::{VectorSetFile, WireScalar};
use sicpovm::{CVector, Conductor, CycloNumber, LineSet};

fn write<S: WireScalar>(dir: &Path, name: &str, ctx: &S::Context, vectors: Vec<CVector<S>>) {
    let label = name.trim_end_matches(".json");
    let set = LineSet::new(ctx, vectors, label).expect("consistent vectors");
    let file = VectorSetFile::from_set(ctx, &set).expect("encodable");
    let mut text = serde_json::to_string_pretty(&file).expect("serializable");
    text.push('\n');
    std::fs::write(dir.join(name), text).expect("fixture directory is writable");
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("create fixtures/");
    let exact = Conductor::DEFAULT;

    write(&dir, "weyl-d2-fiducial-exact.json", &exact, vec![fiducial_d2::<CycloNumber>(&exact).unwrap()]);
    write(&dir, "weyl-d2-fiducial-float.json", &(), vec![search_fiducial_d2()]);
    write(&dir, "weyl-d3-fiducial-exact.json", &exact, vec![fiducial_d3::<CycloNumber>(&exact).unwrap()]);
    write(&dir, "weyl-d3-fiducial-float.json", &(), vec![fiducial_d3::<Complex64>(&()).unwrap()]);
    write(&dir, "stabilizer-d2.json", &(), vec![CVector::<Complex64>::basis(2, 0)]);

    let refsol = bicyclic_basis_d3::<CycloNumber>(&exact, &BicyclicSolution::reference()).unwrap();
    write(&dir, "basis-d3-reference.json", &exact, refsol);
    let real = bicyclic_basis_d3::<CycloNumber>(&exact, &BicyclicSolution::totally_real()).unwrap();
    write(&dir, "basis-d3-real.json", &exact, real);

    let h = 3f64.sqrt() / 2.0;
    let triangle = vec![
        CVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]),
        CVector::new(vec![c(0.5, 0.0), c(h, 0.0)]),
        CVector::new(vec![c(-0.5, 0.0), c(h, 0.0)]),
    ];
    write(&dir, "triangle-r2.json", &(), triangle);
}
