#![no_main]

use libfuzzer_sys::fuzz_target;

// The config parser takes arbitrary text; it must reject garbage with an
// error, never panic, and every accepted document must resolve to a config
// that satisfies its own invariants.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = qscissors::parse_config(text) {
        assert!(cfg.dt > 0.0);
        assert!(cfg.t_max >= 0.0);
        assert!((2..=qscissors::config::MAX_CUTOFF).contains(&cfg.cutoff));
        assert!(cfg.initial.in_range(cfg.cutoff));
        assert!(cfg.epsilon.re.is_finite() && cfg.epsilon.im.is_finite());
        assert!(!cfg.sweep_chi.is_empty());
        cfg.params().validate().expect("resolved params are valid");
    }
});
