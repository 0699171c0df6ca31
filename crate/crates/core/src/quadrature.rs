//! Globally adaptive Gauss–Kronrod (7/15-point) quadrature.
//!
//! Used as the independent numerical route against the closed forms: the
//! angle density must integrate to one, and the cover probability must equal
//! the integral of the per-angle cover chance against that density.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Sum of the per-interval |Kronrod - Gauss| estimates.
    pub abs_error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrate `f` over `[a, b]`, bisecting the worst interval until the
/// summed error estimate drops below `abs_tol` (or the interval budget runs
/// out).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Integral {
    if a == b {
        return Integral {
            value: 0.0,
            abs_error: 0.0,
            intervals: 0,
        };
    }
    let mut pieces = vec![gk15(&f, a, b)];
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.error).sum();
        if total_err <= abs_tol || pieces.len() >= MAX_INTERVALS {
            break;
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("nonempty");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval cannot be split further in f64
            pieces.push(p);
            break;
        }
        pieces.push(gk15(&f, p.a, mid));
        pieces.push(gk15(&f, mid, p.b));
    }
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    Integral {
        value: pieces.iter().map(|p| p.value).sum(),
        abs_error: pieces.iter().map(|p| p.error).sum(),
        intervals: pieces.len(),
    }
}
