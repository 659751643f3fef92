//! Bundled reference data: the 50 measured session vectors and the
//! published tables they are compared against.

use crate::error::Result;
use crate::io::{parse_sessions, SessionRecord, Treatment};
use crate::subspace::SubspaceVector;

/// Per-session angular momentum, five treatments by ten sessions.
pub const SESSIONS_CSV: &str = include_str!("../data/sessions.csv");

pub fn sessions() -> Result<Vec<SessionRecord>> {
    parse_sessions(SESSIONS_CSV.as_bytes(), "sessions.csv")
}

/// Session vectors of one treatment, in session order.
pub fn treatment_sessions(records: &[SessionRecord], treatment: Treatment) -> Vec<SubspaceVector> {
    let mut rows: Vec<&SessionRecord> = records.iter().filter(|r| r.treatment == treatment).collect();
    rows.sort_by_key(|r| r.session_id);
    rows.iter().map(|r| r.l).collect()
}

/// Published values, indexed in treatment order `Tr1..Tr5` unless noted.
pub mod expected {
    pub const TREATMENT_A: [f64; 5] = [-4.236, -0.618, 0.234, 1.618, 4.236];

    pub const SIGMA_ALPHA_PI: [f64; 10] = [
        -2.988, -1.847, 1.847, 2.988, -2.988, -1.847, 1.847, -2.988, -1.847, -2.988,
    ];
    pub const SIGMA_BETA_PI: [f64; 10] = [1.847, -2.988, 2.988, -1.847, 1.847, -2.988, 2.988, 1.847, -2.988, 1.847];
    pub const SIGMA_ALPHA_UNIT: [f64; 10] = [
        -0.3804, -0.2351, 0.2351, 0.3804, -0.3804, -0.2351, 0.2351, -0.3804, -0.2351, -0.3804,
    ];
    pub const SIGMA_BETA_UNIT: [f64; 10] = [
        0.2351, -0.3804, 0.3804, -0.2351, 0.2351, -0.3804, 0.3804, 0.2351, -0.3804, 0.2351,
    ];

    /// Myopic strengths, one row per treatment, components in subspace order.
    pub const MYOPIC_STRENGTHS: [[f64; 10]; 5] = [
        [2.0, -1.0, 1.0, -2.0, 2.0, -1.0, 1.0, 2.0, -1.0, 2.0],
        [0.5, -1.0, 1.0, -0.5, 0.5, -1.0, 1.0, 0.5, -1.0, 0.5],
        [-0.5, -1.0, 1.0, 0.5, -0.5, -1.0, 1.0, -0.5, -1.0, -0.5],
        [-2.0, -1.0, 1.0, 2.0, -2.0, -1.0, 1.0, -2.0, -1.0, -2.0],
        [-2.0, -1.0, 1.0, 2.0, -2.0, -1.0, 1.0, -2.0, -1.0, -2.0],
    ];

    /// Theory correlations; rows `sigma_alpha, sigma_beta`, columns
    /// `sigma_alpha, sigma_beta, M1..M5`.
    pub const THEORY_RHO: [[f64; 7]; 2] = [
        [1.0, 0.0500, -0.4543, 0.1307, 0.8348, 0.9950, 0.9950],
        [0.0500, 1.0, 0.8670, 0.9967, 0.5915, -0.0498, -0.0498],
    ];

    /// Treatment-level correlation with `sigma_alpha` and its p-value.
    pub const EXPERIMENT_RHO_ALPHA: [f64; 5] = [-0.4630, 0.4750, 0.9090, 0.9750, 0.9990];
    pub const EXPERIMENT_P_ALPHA: [f64; 5] = [0.1667, 0.2924, 0.0014, 0.0, 0.0];
    pub const EXPERIMENT_RHO_BETA: [f64; 5] = [0.8510, 0.8400, 0.3330, 0.2250, 0.0070];
    pub const EXPERIMENT_P_BETA: [f64; 5] = [0.0020, 0.0013, 0.1366, 0.5280, 0.8563];

    /// Unit vectors of the treatment means, one row per treatment.
    pub const TREATMENT_UNIT: [[f64; 10]; 5] = [
        [
            0.3478, -0.1601, 0.2400, -0.4278, 0.4096, -0.2292, 0.1675, 0.4068, -0.1572, 0.4175,
        ],
        [
            -0.1060, -0.4085, 0.5420, -0.0275, -0.0319, -0.3648, 0.2907, 0.0591, -0.4995, 0.2363,
        ],
        [
            -0.2229, -0.3906, 0.2760, 0.3375, -0.1187, -0.4537, 0.3495, -0.1720, -0.3373, -0.3497,
        ],
        [
            -0.3899, -0.2935, 0.2786, 0.4047, -0.3265, -0.2935, 0.2302, -0.2655, -0.3545, -0.2803,
        ],
        [
            -0.4050, -0.2057, 0.2349, 0.3758, -0.4006, -0.2081, 0.2038, -0.4086, -0.1977, -0.3818,
        ],
    ];
    pub const TREATMENT_NORM: [f64; 5] = [8.6771, 4.0952, 2.6071, 5.6943, 11.5525];

    /// Treatment-level fits: `a, c0, k_alpha, k_beta, R^2, p`. The published
    /// goodness-of-fit column is the coefficient of determination.
    pub const TREATMENT_FITS: [[f64; 6]; 5] = [
        [-4.236, 0.0, -0.5967, 0.9229, 0.9884, 0.0],
        [-0.618, 0.0, 0.2214, 0.4403, 0.8924, 0.0004],
        [0.236, 0.0, 0.2927, 0.1345, 0.9337, 0.0001],
        [1.618, 0.0, 0.7070, 0.1159, 0.9716, 0.0],
        [4.236, 0.0, 1.4666, -0.0943, 0.9979, 0.0],
    ];

    /// Paired t-test of `|k_alpha| = |k_beta|` over sessions, Tr1 and Tr3.
    pub const PAIRED_ABS_P: [(usize, f64); 2] = [(0, 0.090), (2, 0.386)];

    /// Per-session fits in treatment order, ten sessions each: `c0, k_alpha, k_beta, p`.
    pub const SESSION_FITS: [[f64; 4]; 50] = [
        [0.0, -0.591, 0.575, 0.0],
        [0.0, 0.161, 1.593, 0.0],
        [0.0, -0.401, 1.168, 0.0],
        [0.0, -0.564, 0.953, 0.003],
        [0.0, -1.676, 1.199, 0.0],
        [0.0, -0.258, 0.530, 0.007],
        [0.0, -0.563, 1.051, 0.001],
        [0.0, -0.728, 0.576, 0.005],
        [0.0, -0.846, 0.954, 0.0],
        [0.0, -0.501, 0.630, 0.002],
        [0.0, 0.479, 0.048, 0.001],
        [0.0, 0.713, 0.708, 0.0],
        [0.0, 0.245, 0.832, 0.0],
        [0.0, 0.125, 0.114, 0.505],
        [0.0, -0.222, 1.229, 0.0],
        [0.0, 0.752, 0.097, 0.001],
        [0.0, -0.784, 0.314, 0.009],
        [0.0, 0.611, 0.483, 0.011],
        [0.0, 0.055, 0.416, 0.014],
        [0.0, 0.241, 0.161, 0.0],
        [0.0, -0.0, -0.013, 0.977],
        [0.0, 0.611, 0.167, 0.010],
        [0.0, 0.329, 0.337, 0.005],
        [0.0, 0.070, 0.401, 0.0],
        [0.0, 0.428, 0.377, 0.004],
        [0.0, 0.664, -0.066, 0.001],
        [0.0, 0.065, -0.070, 0.736],
        [0.0, 0.303, 0.105, 0.118],
        [0.0, 0.032, -0.241, 0.007],
        [0.0, 0.426, 0.347, 0.002],
        [0.0, 1.026, -0.069, 0.004],
        [0.0, 0.975, 0.350, 0.0],
        [0.0, 0.735, 0.319, 0.0],
        [0.0, 0.463, 0.041, 0.002],
        [0.0, 0.823, 0.441, 0.004],
        [0.0, 0.758, -0.164, 0.0],
        [0.0, -0.272, 0.302, 0.012],
        [0.0, 1.193, 0.164, 0.0],
        [0.0, 0.765, -0.255, 0.013],
        [0.0, 0.605, 0.028, 0.001],
        [0.0, 2.104, 0.148, 0.0],
        [0.0, 1.704, 0.479, 0.0],
        [0.0, 0.985, 0.018, 0.003],
        [0.0, 1.859, -0.563, 0.0],
        [0.0, 0.786, -0.030, 0.129],
        [0.0, 1.460, -0.216, 0.0],
        [0.0, 0.434, 0.251, 0.206],
        [0.0, 1.606, -0.145, 0.0],
        [0.0, 1.602, -0.618, 0.0],
        [0.0, 2.127, -0.266, 0.0],
    ];

    /// Session means and their t-test p-values: `mean k_alpha, mean k_beta, p(k_alpha), p(k_beta)`.
    pub const SESSION_MEANS: [[f64; 4]; 5] = [
        [-0.597, 0.923, 0.003, 0.0],
        [0.221, 0.440, 0.170, 0.005],
        [0.293, 0.134, 0.004, 0.093],
        [0.707, 0.116, 0.0, 0.155],
        [1.467, -0.094, 0.0, 0.409],
    ];

    /// Single-regressor fits per session: `c0_alpha, k_alpha, p_alpha, c0_beta, k_beta, p_beta`.
    pub const SINGLE_REGRESSOR_FITS: [[f64; 6]; 50] = [
        [0.181, -0.559, 0.052, 0.646, 0.549, 0.03],
        [0.501, 0.249, 0.705, -0.176, 1.6, 0.0],
        [0.368, -0.337, 0.505, 0.438, 1.15, 0.0],
        [0.3, -0.511, 0.262, 0.616, 0.927, 0.007],
        [0.378, -1.61, 0.01, 1.831, 1.124, 0.072],
        [0.167, -0.229, 0.371, 0.282, 0.518, 0.006],
        [0.331, -0.505, 0.286, 0.615, 1.025, 0.002],
        [0.181, -0.696, 0.041, 0.795, 0.543, 0.09],
        [0.3, -0.793, 0.069, 0.924, 0.916, 0.011],
        [0.198, -0.467, 0.131, 0.548, 0.607, 0.015],
        [0.015, 0.482, 0.0, -0.524, 0.069, 0.683],
        [0.223, 0.752, 0.032, -0.779, 0.741, 0.016],
        [0.262, 0.291, 0.411, -0.267, 0.843, 0.0],
        [0.036, 0.131, 0.395, -0.136, 0.12, 0.388],
        [0.387, -0.154, 0.764, 0.243, 1.219, 0.0],
        [0.031, 0.757, 0.0, -0.821, 0.131, 0.629],
        [0.099, -0.767, 0.007, 0.857, 0.278, 0.377],
        [0.152, 0.638, 0.041, -0.668, 0.511, 0.081],
        [0.131, 0.078, 0.7, -0.06, 0.419, 0.003],
        [0.051, 0.25, 0.006, -0.263, 0.172, 0.062],
        [-0.004, -0.001, 0.986, 0.0, -0.013, 0.823],
        [0.053, 0.62, 0.004, -0.667, 0.195, 0.427],
        [0.106, 0.348, 0.065, -0.36, 0.352, 0.032],
        [0.126, 0.092, 0.595, -0.076, 0.405, 0.0],
        [0.119, 0.449, 0.041, -0.468, 0.396, 0.048],
        [-0.021, 0.66, 0.0, -0.725, -0.036, 0.877],
        [-0.022, 0.061, 0.62, -0.071, -0.067, 0.545],
        [0.033, 0.309, 0.05, -0.331, 0.118, 0.453],
        [-0.076, 0.018, 0.87, -0.034, -0.239, 0.001],
        [0.109, 0.445, 0.028, -0.466, 0.366, 0.053],
        [-0.022, 1.023, 0.001, -1.121, -0.023, 0.952],
        [0.11, 0.994, 0.001, -1.065, 0.394, 0.265],
        [0.101, 0.752, 0.002, -0.803, 0.353, 0.198],
        [0.013, 0.465, 0.0, -0.505, 0.062, 0.711],
        [0.139, 0.848, 0.008, -0.899, 0.479, 0.156],
        [-0.051, 0.749, 0.0, -0.828, -0.129, 0.621],
        [0.095, -0.256, 0.127, 0.298, 0.29, 0.044],
        [0.052, 1.202, 0.0, -1.304, 0.218, 0.59],
        [-0.08, 0.751, 0.006, -0.835, -0.22, 0.474],
        [0.009, 0.606, 0.0, -0.661, 0.055, 0.797],
        [0.047, 2.112, 0.0, -2.298, 0.243, 0.734],
        [0.151, 1.73, 0.0, -1.861, 0.556, 0.352],
        [0.006, 0.986, 0.0, -1.076, 0.062, 0.863],
        [-0.177, 1.828, 0.0, -2.031, -0.479, 0.462],
        [-0.01, 0.785, 0.036, -0.859, 0.005, 0.99],
        [-0.068, 1.448, 0.0, -1.595, -0.15, 0.769],
        [0.079, 0.448, 0.13, -0.474, 0.27, 0.333],
        [-0.046, 1.598, 0.0, -1.755, -0.072, 0.893],
        [-0.195, 1.568, 0.0, -1.75, -0.546, 0.327],
        [-0.084, 2.112, 0.0, -2.323, -0.17, 0.814],
    ];

    /// Rows and columns: `sigma_alpha, sigma_beta, M1..M5` (myopic strengths per treatment).
    pub const THEORY_PANEL_RHO: [[f64; 7]; 7] = [
        [1.0, 0.0500, -0.4543, 0.1307, 0.8348, 0.9950, 0.9950],
        [0.0500, 1.0, 0.8670, 0.9967, 0.5915, -0.0498, -0.0498],
        [-0.4543, 0.8670, 1.0, 0.8238, 0.1111, -0.5408, -0.5408],
        [0.1307, 0.9967, 0.8238, 1.0, 0.6548, 0.0313, 0.0313],
        [0.8348, 0.5915, 0.1111, 0.6548, 1.0, 0.7759, 0.7759],
        [0.9950, -0.0498, -0.5408, 0.0313, 0.7759, 1.0, 1.0],
        [0.9950, -0.0498, -0.5408, 0.0313, 0.7759, 1.0, 1.0],
    ];

    /// Rows and columns: `sigma_alpha, sigma_beta, L1..L5` (treatment unit vectors).
    pub const EXPERIMENT_PANEL_RHO: [[f64; 7]; 7] = [
        [1.0, 0.050, -0.470, 0.426, 0.866, 0.970, 0.996],
        [0.050, 1.0, 0.852, 0.863, 0.471, 0.222, -0.021],
        [-0.470, 0.852, 1.0, 0.554, -0.036, -0.302, -0.527],
        [0.426, 0.863, 0.554, 1.0, 0.681, 0.595, 0.373],
        [0.866, 0.471, -0.036, 0.681, 1.0, 0.922, 0.824],
        [0.970, 0.222, -0.302, 0.595, 0.922, 1.0, 0.952],
        [0.996, -0.021, -0.527, 0.373, 0.824, 0.952, 1.0],
    ];

    pub const EXPERIMENT_PANEL_P: [[f64; 7]; 7] = [
        [0.0, 0.891, 0.171, 0.219, 0.001, 0.0, 0.0],
        [0.891, 0.0, 0.002, 0.001, 0.169, 0.537, 0.954],
        [0.171, 0.002, 0.0, 0.096, 0.921, 0.396, 0.118],
        [0.219, 0.001, 0.096, 0.0, 0.030, 0.070, 0.289],
        [0.001, 0.169, 0.921, 0.030, 0.0, 0.0, 0.003],
        [0.0, 0.537, 0.396, 0.070, 0.0, 0.0, 0.0],
        [0.0, 0.954, 0.118, 0.289, 0.003, 0.0, 0.0],
    ];

    /// Pooled 50-session correlations between subspace components.
    pub const POOLED_RHO: [[f64; 10]; 10] = [
        [
            1.0, 0.1977, -0.2106, -0.9101, 0.938, 0.3283, -0.2357, 0.8823, 0.3181, 0.8826,
        ],
        [
            0.1977, 1.0, -0.5832, -0.3445, 0.1704, 0.5599, -0.5855, 0.2655, 0.7611, 0.23,
        ],
        [
            -0.2106, -0.5832, 1.0, -0.0211, -0.1448, -0.621, 0.5656, -0.1799, -0.4853, 0.024,
        ],
        [
            -0.9101, -0.3445, -0.0211, 1.0, -0.8719, -0.2554, 0.207, -0.8455, -0.3974, -0.926,
        ],
        [
            0.938, 0.1704, -0.1448, -0.8719, 1.0, 0.139, -0.3082, 0.9427, 0.2969, 0.8826,
        ],
        [
            0.3283, 0.5599, -0.621, -0.2554, 0.139, 1.0, -0.7145, 0.1192, 0.5719, 0.2802,
        ],
        [
            -0.2357, -0.5855, 0.5656, 0.207, -0.3082, -0.7145, 1.0, -0.2813, -0.6138, -0.3258,
        ],
        [
            0.8823, 0.2655, -0.1799, -0.8455, 0.9427, 0.1192, -0.2813, 1.0, 0.1586, 0.9102,
        ],
        [
            0.3181, 0.7611, -0.4853, -0.3974, 0.2969, 0.5719, -0.6138, 0.1586, 1.0, 0.1824,
        ],
        [
            0.8826, 0.23, 0.024, -0.926, 0.8826, 0.2802, -0.3258, 0.9102, 0.1824, 1.0,
        ],
    ];

    pub const POOLED_P: [[f64; 10]; 10] = [
        [0.0, 0.1687, 0.1421, 0.0, 0.0, 0.0199, 0.0994, 0.0, 0.0244, 0.0],
        [0.1687, 0.0, 0.0, 0.0143, 0.2367, 0.0, 0.0, 0.0624, 0.0, 0.1082],
        [0.1421, 0.0, 0.0, 0.8842, 0.3156, 0.0, 0.0, 0.2113, 0.0004, 0.8687],
        [0.0, 0.0143, 0.8842, 0.0, 0.0, 0.0734, 0.1491, 0.0, 0.0043, 0.0],
        [0.0, 0.2367, 0.3156, 0.0, 0.0, 0.3356, 0.0294, 0.0, 0.0363, 0.0],
        [0.0199, 0.0, 0.0, 0.0734, 0.3356, 0.0, 0.0, 0.4098, 0.0, 0.0487],
        [0.0994, 0.0, 0.0, 0.1491, 0.0294, 0.0, 0.0, 0.0478, 0.0, 0.0210],
        [0.0, 0.0624, 0.2113, 0.0, 0.0, 0.4098, 0.0478, 0.0, 0.2712, 0.0],
        [0.0244, 0.0, 0.0004, 0.0043, 0.0363, 0.0, 0.0, 0.2712, 0.0, 0.2050],
        [0.0, 0.1082, 0.8687, 0.0, 0.0, 0.0487, 0.0210, 0.0, 0.2050, 0.0],
    ];
}
