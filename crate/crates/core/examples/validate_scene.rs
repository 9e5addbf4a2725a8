//! Parses a scene file and reports category, algebra and module violations.
//!
//! `cargo run --example validate_scene -- fixtures/associativity_break.json`

use gradalg::scene::SceneFile;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixtures/upper_triangular.json".into());
    let text = std::fs::read_to_string(&path).expect("read scene file");
    let file = match SceneFile::parse(&text) {
        Ok(f) => f,
        Err(e) => {
            println!("{path}: {e}");
            return;
        }
    };
    let (report, scene) = file.validate().expect("scene builds");
    println!("{path}: clean {}", report.clean);
    if let Some(c) = &report.category {
        println!("  category: {} violation(s)", c.violations.len());
    }
    if let Some(a) = &report.algebra {
        for v in &a.violations {
            println!("  algebra: {}", serde_json::to_string(v).unwrap());
        }
    }
    for (name, m) in &report.modules {
        println!("  module {name}: {} violation(s)", m.violations.len());
    }
    if let Some(scene) = scene {
        let cat = scene.algebra.category();
        println!(
            "  {} objects, {} arrows, total dim {}",
            cat.objects().len(),
            cat.arrow_count(),
            scene.algebra.dims().iter().sum::<usize>()
        );
    }
}
