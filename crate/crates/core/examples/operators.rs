//! Mating selection, SBX and polynomial mutation on one seeded stream.
//!
//!     cargo run --example operators

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use manyopt::problems::Bounds;
use manyopt::variation::{polynomial_mutation, select_mates, sbx, sbx_beta, SbxScheme, VariationConfig};

fn main() -> manyopt::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let bounds = Bounds::new(vec![0.0; 4], vec![1.0; 4])?;
    let config = VariationConfig::for_variables(4);

    for u in [0.1, 0.5, 0.9] {
        println!("beta(u = {u}) = {:.6}", sbx_beta(u, config.eta_c));
    }

    let neighborhood = [3, 4, 5, 6];
    let (i, j) = select_mates(4, &neighborhood, 10, config.p_s, &mut rng);
    println!("\nmates: {i} and {j}");

    let p1 = [0.2, 0.4, 0.6, 0.8];
    let p2 = [0.3, 0.1, 0.9, 0.5];
    for scheme in [SbxScheme::PerVariable, SbxScheme::Whole] {
        let child = sbx(&p1, &p2, config.eta_c, config.p_c, scheme, &bounds, &mut rng);
        println!("sbx ({}): {child:.4?}", scheme.name());
    }

    let mut child = p1.to_vec();
    polynomial_mutation(&mut child, config.eta_m, 1.0, &bounds, &mut rng);
    println!("pm with p_m = 1: {child:.4?}");
    Ok(())
}
