// Frozen reference values for the acceptance suite.
//
// Generated by scripts/gen_reference.py (mpmath, 50 significant digits;
// chi-square critical value from scipy). Regenerate with:
//
//     python3 scripts/gen_reference.py > crates/cli/tests/golden/mod.rs
//     cargo fmt --all
//
// Do not edit by hand.
#![allow(clippy::excessive_precision)]
#![allow(dead_code)]

/// (n_nodes, range_m, area_m2, expected lambda)
pub const DENSITY_CASES: &[(u64, f64, f64, f64)] = &[
    (2645, 18.8228234866605, 43985.8639672594, 66.93171629099095),
    (
        3894,
        2.028913929491833,
        100825.86900888041,
        0.4994604379464317,
    ),
    (
        782,
        1.0134241501645485,
        9846.738581317566,
        0.2562398766072147,
    ),
    (
        2217,
        16.023941061272993,
        35136.54382766208,
        50.897353766386715,
    ),
    (
        4339,
        12.367547138751185,
        98629.53853571876,
        21.13974140101617,
    ),
    (
        1627,
        6.487671703494074,
        218820.55509879685,
        0.983166428139242,
    ),
    (
        1990,
        10.144904952230384,
        68274.31311438303,
        9.424136644779015,
    ),
    (
        4299,
        1.0804986485094425,
        149857.28000738166,
        0.10521748777852158,
    ),
    (
        1876,
        7.9996385432882855,
        213740.52188666287,
        1.7645605668975763,
    ),
    (
        38,
        17.637937368675704,
        41588.75028369607,
        0.8930035621246507,
    ),
];

/// (lambda, n_nodes, expected connectivity probability)
pub const CONNECTIVITY_CASES: &[(f64, u64, f64)] = &[
    (21.88560089328459, 2351, 0.9999992647132018),
    (1.367561091659081, 1046, 2.7644930549950235e-134),
    (17.172393773379685, 3327, 0.9998840817598733),
    (3.592092755435098, 3495, 4.080979832551282e-43),
    (2.7566393304473538, 3111, 2.258095142680833e-89),
    (28.149835671881345, 2445, 0.999999998544673),
    (29.538730795466375, 3887, 0.9999999994230917),
    (17.776624400005264, 3533, 0.999932727254959),
    (2.661457828605854, 2577, 9.235914017948827e-82),
    (19.50235873607999, 2113, 0.9999928364027832),
];

/// (range_m, side_m, expected p_r)
pub const P_R_CASES: &[(f64, f64, f64)] = &[
    (15.416061509262013, 142.9860144669639, 0.03651822159761862),
    (79.39151699552643, 375.03384743974664, 0.14078524564143474),
    (26.289312368467638, 229.72102611818337, 0.04114403029360135),
    (19.29386471266359, 276.59148766837245, 0.015286593260103206),
    (111.71634987470003, 338.1427129594819, 0.3429124729257066),
    (77.60842695183632, 169.89071367224378, 0.6555840106867321),
    (90.7341046630259, 418.0274449057518, 0.14800670753276812),
    (183.5720075885243, 375.5308325984245, 0.7507089393277879),
    (15.427548743606359, 137.51227882527067, 0.03954219457936575),
    (136.17048493222887, 405.35729101921675, 0.3545192835818814),
];

/// (n_nodes, range_m, side_m, n, expected binomial pmf)
pub const BINOMIAL_CASES: &[(u64, f64, f64, u64, f64)] = &[
    (
        898,
        29.744647884188577,
        108.28692922644854,
        178,
        0.0007125440480155724,
    ),
    (
        1004,
        23.030979212975073,
        75.07411463468836,
        234,
        1.6395963539342436e-06,
    ),
    (
        429,
        6.669688401643304,
        105.85024071763576,
        17,
        2.7219355133298797e-05,
    ),
    (
        948,
        10.27952564843799,
        89.74580595558268,
        12,
        1.9730454567112802e-07,
    ),
    (
        556,
        22.02209709062531,
        168.84814550882487,
        12,
        9.590951795655546e-05,
    ),
    (
        967,
        12.718585725659864,
        166.21603569041952,
        36,
        4.284653565698854e-05,
    ),
    (
        281,
        4.083249363315421,
        82.64018429353101,
        2,
        0.2702259455723879,
    ),
    (
        448,
        18.828122478207963,
        63.08109288532303,
        117,
        0.02964017977000662,
    ),
    (
        229,
        7.025323004512166,
        142.77690075209694,
        4,
        0.06636424891020751,
    ),
    (
        789,
        19.99419665689746,
        190.88769244591757,
        41,
        0.002678107371086437,
    ),
];

/// (lambda_s, n, expected poisson pmf)
pub const POISSON_CASES: &[(f64, u64, f64)] = &[
    (10.474002590693907, 15, 0.04329014246895922),
    (18.145065294793447, 7, 0.0016926901993368402),
    (1.992014442016102, 0, 0.13642033760437514),
    (54.67307788196821, 72, 0.0038768749310903934),
    (31.693996810768756, 7, 1.0961768054849487e-07),
    (58.47339423237297, 40, 0.002355128722932939),
    (2.0040624009720704, 0, 0.13478661226574373),
    (53.70162588480186, 43, 0.019319382046439623),
    (49.819481924838115, 11, 2.7158730619393447e-11),
    (1.4952209168806732, 1, 0.33522713885970884),
];

/// Benchmark sweep at R = 7 m, L = 100 m:
/// (n_nodes, lambda, connectivity p, shaping)
pub const BENCHMARK_ROWS: &[(u64, f64, f64, f64)] = &[
    (
        100,
        1.5393804002589986,
        3.264723273511083e-11,
        0.7821582933562835,
    ),
    (
        200,
        3.078760800517997,
        8.094609486205405e-05,
        0.9532699100094105,
    ),
    (
        300,
        4.618141200776996,
        0.050993810640020336,
        0.9899757427346083,
    ),
    (
        400,
        6.157521601035994,
        0.42831518836743715,
        0.9978496567470126,
    ),
    (
        500,
        7.696902001294993,
        0.7967871455423274,
        0.9995387213253561,
    ),
    (
        600,
        9.236282401553993,
        0.9432099855465496,
        0.9999010492788137,
    ),
    (
        700,
        10.775662801812992,
        0.9854749261692713,
        0.9999787736876611,
    ),
    (
        800,
        12.315043202071989,
        0.9964193904011344,
        0.9999954466594068,
    ),
    (
        900,
        13.854423602330987,
        0.9991347232435296,
        0.9999990232448186,
    ),
    (
        1000,
        15.393804002589986,
        0.9997936943564311,
        0.9999997904723653,
    ),
];

/// Benchmark coverage at the binomial mode:
/// (n_nodes, n, binomial pmf, poisson pmf)
pub const BENCHMARK_COVERAGE_ROWS: &[(u64, u64, f64, f64)] = &[
    (100, 1, 0.3332057282180796, 0.33198784103064455),
    (200, 3, 0.22559720965864108, 0.22389399950644218),
    (300, 4, 0.18860998519133987, 0.18746039442367227),
    (400, 6, 0.16157196558088965, 0.16035717053796),
    (500, 7, 0.14538508002662215, 0.14443030527606066),
    (600, 9, 0.13239739146558904, 0.1314047023898206),
    (700, 10, 0.12254306163817408, 0.12171463533892284),
    (800, 12, 0.11480650850271355, 0.11394780335695129),
    (900, 13, 0.10786201673798528, 0.10712202780812398),
    (1000, 15, 0.10272268157344294, 0.1019561232008974),
];

/// pi * 7^2 / 100^2, the benchmark disc-coverage probability.
pub const BENCH_P_R: f64 = 0.015393804002589986;

/// lambda_s at N = 1000 for the benchmark field.
pub const BENCH_LAMBDA_S_N1000: f64 = 15.378410198587396;

/// Binomial coverage pmf at N = 1000, n = 15 (benchmark field).
pub const BENCH_BINOMIAL_N1000_AT_15: f64 = 0.10272268157344294;

/// TV(binomial, poisson) at fixed lambda_s = BENCH_LAMBDA_S_N1000,
/// for N in {50, 200, 1000} with p = lambda_s / (N - 1).
pub const TV_FIXED_LAMBDA_S: &[(u64, f64)] = &[
    (50, 0.09152352530495639),
    (200, 0.01941887732346708),
    (1000, 0.0037496433371814295),
];

/// Benchmark densities and connectivity probabilities.
pub const BENCH_LAMBDA_N100: f64 = 1.5393804002589986;
pub const BENCH_LAMBDA_N500: f64 = 7.696902001294993;
pub const BENCH_CONNECTIVITY_N100: f64 = 3.264723273511083e-11;
pub const BENCH_CONNECTIVITY_N500: f64 = 0.7967871455423274;

pub const BENCH_SHAPING_N500: f64 = 0.9995387213253561;
pub const BENCH_SHAPING_N700: f64 = 0.9999787736876611;

/// Smallest N with p >= 0.1 on the benchmark field.
pub const STOPPING_N_THRESHOLD_01: u64 = 321;
/// Smallest N with p >= 0.9 on the benchmark field.
pub const STOPPING_N_COMPLEMENT_01: u64 = 557;

/// Exact contact probability for two uniform nodes on the torus.
pub const TWO_NODE_CONTACT_P: f64 = 0.015393804002589986;

/// Chi-square critical value, 24 degrees of freedom, upper tail 0.001.
pub const CHI2_CRIT_DF24_P001: f64 = 51.17859777737739;
