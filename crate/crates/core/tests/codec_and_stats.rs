use lipaffine::{
    compute_stats, decode_image, decode_pixel, encode_image, encode_pixel, lip_add, lip_smul,
    log_mean, log_mean_fold_oracle, log_variance, phi, GrayImage, GrayLevel, RawImage,
};
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn codec_round_trip_exhaustive_small_depths() {
    for maxval in [1u16, 255] {
        for g in 0..=maxval {
            assert_eq!(encode_pixel(decode_pixel(g, maxval).unwrap(), maxval), g);
        }
    }
}

#[test]
fn codec_round_trip_sixteen_bit() {
    // every code; cheap enough to not bother sampling
    for g in 0..=u16::MAX {
        assert_eq!(
            encode_pixel(decode_pixel(g, u16::MAX).unwrap(), u16::MAX),
            g
        );
    }
}

proptest! {
    #[test]
    fn codec_is_odd_and_ordered((maxval, a, b) in (1u16..=u16::MAX)
        .prop_flat_map(|m| (Just(m), 0..=m, 0..=m)))
    {
        let da = decode_pixel(a, maxval).unwrap().value();
        prop_assert_eq!(da, -decode_pixel(maxval - a, maxval).unwrap().value());
        let bound = f64::from(maxval) / (f64::from(maxval) + 1.0);
        prop_assert!(da.abs() <= bound && bound < 1.0);
        if a < b {
            prop_assert!(da < decode_pixel(b, maxval).unwrap().value());
        }
    }

    #[test]
    fn image_round_trip(w in 1usize..12, h in 1usize..12, seed in any::<u64>(), deep in any::<bool>()) {
        let maxval = if deep { u16::MAX } else { 255 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let px = (0..w * h).map(|_| rng.gen_range(0..=maxval)).collect();
        let raw = RawImage::new(w, h, maxval, px).unwrap();
        let back = encode_image(&decode_image(&raw), maxval).unwrap();
        prop_assert_eq!(back, raw);
    }
}

fn random_image(rng: &mut ChaCha8Rng, max_side: usize) -> GrayImage {
    let w = rng.gen_range(1..=max_side);
    let h = rng.gen_range(1..=max_side);
    let values: Vec<f64> = (0..w * h).map(|_| rng.gen_range(-0.99..=0.99)).collect();
    GrayImage::from_values(w, h, &values).unwrap()
}

#[test]
fn fold_oracle_matches_fast_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let img = random_image(&mut rng, 64);
        let fast = log_mean(&img).unwrap().value();
        let fold = log_mean_fold_oracle(&img).unwrap().value();
        assert!((fast - fold).abs() <= 1e-9, "{fast} vs {fold}");
    }
}

#[test]
fn statistics_are_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let img = random_image(&mut rng, 32);
        let mut px = img.pixels().to_vec();
        px.shuffle(&mut rng);
        let shuffled = GrayImage::new(img.width(), img.height(), px).unwrap();
        let (a, b) = (
            compute_stats(&img).unwrap(),
            compute_stats(&shuffled).unwrap(),
        );
        assert!((phi(a.mean).get() - phi(b.mean).get()).abs() <= 1e-12);
        assert!((a.variance - b.variance).abs() <= 1e-12);
        // same order, same bits
        assert_eq!(compute_stats(&img).unwrap(), a);
    }
}

#[test]
fn translation_and_scaling_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let img = random_image(&mut rng, 24);
        let c = GrayLevel::new(rng.gen_range(-0.9..0.9)).unwrap();
        let lambda = rng.gen_range(-4.0..4.0);

        let shifted = img.map(|v| lip_add(v, c));
        let expected = lip_add(log_mean(&img).unwrap(), c);
        assert!((log_mean(&shifted).unwrap().value() - expected.value()).abs() <= 1e-10);

        let scaled = img.map(|v| lip_smul(lambda, v));
        let var = log_variance(&img, log_mean(&img).unwrap()).unwrap();
        let var_scaled = log_variance(&scaled, log_mean(&scaled).unwrap()).unwrap();
        assert!((var_scaled - lambda * lambda * var).abs() <= 1e-9 * (lambda * lambda * var));
    }
}

#[test]
fn variance_zero_iff_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let v: f64 = rng.gen_range(-0.999..0.999);
        let n = rng.gen_range(1..200);
        let img = GrayImage::from_values(n, 1, &vec![v; n]).unwrap();
        let s = compute_stats(&img).unwrap();
        assert_eq!(s.variance, 0.0);
        assert_eq!(phi(s.mean).get(), phi(img.pixels()[0]).get());

        let mut values = vec![v; n + 1];
        values[n] = (v + 1e-6).min(0.9999);
        let s = compute_stats(&GrayImage::from_values(n + 1, 1, &values).unwrap()).unwrap();
        assert!(s.variance > 1e-15_f64.powi(2));
    }
}

#[test]
fn decoded_mid_gray_is_centre() {
    let raw = RawImage::new(4, 4, 255, vec![127; 16]).unwrap();
    let s = compute_stats(&decode_image(&raw)).unwrap();
    assert_eq!(s.variance, 0.0);
    assert!((s.mean.value() + 1.0 / 256.0).abs() < 1e-15);
}
