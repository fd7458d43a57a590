//! Published eigenvalue series for equispaced points on `[0, 1]` with endpoints, as `(n, value)`.
//!
//! Used as golden data by tests and by the CLI report.

/// `lambda_min(k(X, X))`, basic Matern kernel.
pub const BASIC_GRAM_LAMBDA_MIN: [(usize, f64); 30] = [
    (10, 0.0568706355670114),
    (11, 0.0509790108184866),
    (12, 0.0462028919765764),
    (13, 0.0422514746581091),
    (15, 0.0360910766583689),
    (16, 0.0336425094373854),
    (18, 0.0296274128354198),
    (20, 0.0264721339665011),
    (22, 0.0239264621735002),
    (25, 0.0209125978721527),
    (28, 0.0185747016811636),
    (31, 0.0167079271766553),
    (34, 0.0151827029214497),
    (38, 0.0135357861205502),
    (42, 0.0122115780074669),
    (47, 0.0108812797242231),
    (52, 0.00981255447584397),
    (57, 0.00893511542368145),
    (64, 0.00794112253319229),
    (71, 0.00714623205743548),
    (78, 0.0064960488316209),
    (87, 0.00581578333197956),
    (97, 0.00520965210649342),
    (107, 0.00471796274227804),
    (119, 0.00423800109328926),
    (132, 0.00381731586191683),
    (146, 0.00344866135030548),
    (162, 0.00310587206185355),
    (180, 0.00279350154815347),
    (200, 0.00251271251551893),
];

/// `lambda_min(k*(X, X))`, basic Matern kernel.
pub const BASIC_CONV_LAMBDA_MIN: [(usize, f64); 30] = [
    (10, 0.00011886014854231),
    (11, 8.6252120083529e-05),
    (12, 6.45552621912302e-05),
    (13, 4.95643953872575e-05),
    (15, 3.10548270318192e-05),
    (16, 2.51978461772709e-05),
    (18, 1.72529274722496e-05),
    (20, 1.23266132363683e-05),
    (22, 9.1111548721959e-06),
    (25, 6.08967878326465e-06),
    (28, 4.26962252390914e-06),
    (31, 3.10845882520479e-06),
    (34, 2.33302598925687e-06),
    (38, 1.6534705822007e-06),
    (42, 1.21422930286145e-06),
    (47, 8.59109625445634e-07),
    (52, 6.3003277831556e-07),
    (57, 4.75683433737523e-07),
    (64, 3.3393208945073e-07),
    (71, 2.43352635791937e-07),
    (78, 1.82786546806138e-07),
    (87, 1.31162849704271e-07),
    (97, 9.42762588211258e-08),
    (107, 7.00214604715077e-08),
    (119, 5.07507370304113e-08),
    (132, 3.70873697152746e-08),
    (146, 2.73462015184235e-08),
    (162, 1.99751613844813e-08),
    (180, 1.45338712965351e-08),
    (200, 1.05769074353314e-08),
];

/// Lower bound curve `0.4 q^1` for the basic Gram matrix.
pub const BASIC_GRAM_BOUND: [(usize, f64); 30] = [
    (10, 0.0222222222222222),
    (11, 0.02),
    (12, 0.0181818181818182),
    (13, 0.0166666666666667),
    (15, 0.0142857142857143),
    (16, 0.0133333333333333),
    (18, 0.0117647058823529),
    (20, 0.0105263157894737),
    (22, 0.00952380952380952),
    (25, 0.00833333333333333),
    (28, 0.00740740740740741),
    (31, 0.00666666666666667),
    (34, 0.00606060606060606),
    (38, 0.00540540540540541),
    (42, 0.00487804878048781),
    (47, 0.00434782608695652),
    (52, 0.00392156862745098),
    (57, 0.00357142857142857),
    (64, 0.00317460317460317),
    (71, 0.00285714285714286),
    (78, 0.0025974025974026),
    (87, 0.00232558139534884),
    (97, 0.00208333333333333),
    (107, 0.00188679245283019),
    (119, 0.00169491525423729),
    (132, 0.00152671755725191),
    (146, 0.00137931034482759),
    (162, 0.00124223602484472),
    (180, 0.00111731843575419),
    (200, 0.00100502512562814),
];

/// Lower bound curve `0.24 q^3` for the basic convolutional Gram matrix.
pub const BASIC_CONV_BOUND: [(usize, f64); 30] = [
    (10, 4.11522633744856e-05),
    (11, 3e-05),
    (12, 2.25394440270473e-05),
    (13, 1.73611111111111e-05),
    (15, 1.0932944606414e-05),
    (16, 8.88888888888889e-06),
    (18, 6.10624872786485e-06),
    (20, 4.37381542498906e-06),
    (22, 3.23939099449303e-06),
    (25, 2.17013888888889e-06),
    (28, 1.52415790275873e-06),
    (31, 1.11111111111111e-06),
    (34, 8.34794223223975e-07),
    (38, 5.9226501885377e-07),
    (42, 4.35280973868632e-07),
    (47, 3.08210733952494e-07),
    (52, 2.26157360291291e-07),
    (57, 1.70827259475219e-07),
    (64, 1.19977444240483e-07),
    (71, 8.74635568513119e-08),
    (78, 6.57126648018873e-08),
    (87, 4.71656583697033e-08),
    (97, 3.39084201388889e-08),
    (107, 2.51885784909691e-08),
    (119, 1.82589261803787e-08),
    (132, 1.33446555321826e-08),
    (146, 9.84050186559514e-09),
    (162, 7.18858854699695e-09),
    (180, 5.23072829696728e-09),
    (200, 3.806817222904e-09),
];

/// `lambda_min(k(X, X))`, linear Matern kernel.
pub const LINEAR_GRAM_LAMBDA_MIN: [(usize, f64); 30] = [
    (10, 0.000127687777536716),
    (11, 9.12427051158741e-05),
    (12, 6.75264875039512e-05),
    (13, 5.14109596502163e-05),
    (15, 3.18457204284159e-05),
    (16, 2.57377980314241e-05),
    (18, 1.75221725720661e-05),
    (20, 1.24711574202464e-05),
    (22, 9.19350452871469e-06),
    (25, 6.12839311110785e-06),
    (28, 4.28944269243446e-06),
    (31, 3.11931750086371e-06),
    (34, 2.33931269898752e-06),
    (38, 1.65672429514872e-06),
    (42, 1.21602712880058e-06),
    (47, 8.60032058251325e-07),
    (52, 6.30538841431724e-07),
    (57, 4.75976682080733e-07),
    (64, 3.34079323271038e-07),
    (71, 2.43432004000361e-07),
    (78, 1.82831875424865e-07),
    (87, 1.31186490493603e-07),
    (97, 9.42886125714892e-08),
    (107, 7.00283369252972e-08),
    (119, 5.07543828796021e-08),
    (132, 3.70893328995976e-08),
    (146, 2.73472767741838e-08),
    (162, 1.99757381084406e-08),
    (180, 1.45341794331824e-08),
    (200, 1.05770702379763e-08),
];

/// `lambda_min(k*(X, X))`, linear Matern kernel; the tail is roundoff.
pub const LINEAR_CONV_LAMBDA_MIN: [(usize, f64); 30] = [
    (10, 9.39015888450254e-10),
    (11, 4.29869620858017e-10),
    (12, 2.13088517923071e-10),
    (13, 1.1271358878666e-10),
    (15, 3.67643184905821e-11),
    (16, 2.23320874303429e-11),
    (18, 9.07610130292826e-12),
    (20, 4.09263205106748e-12),
    (22, 2.00428895930304e-12),
    (25, 7.75366265057479e-13),
    (28, 3.36430386937811e-13),
    (31, 1.59828618366265e-13),
    (34, 8.16443554393366e-14),
    (38, 3.65129080571313e-14),
    (42, 1.76747386387524e-14),
    (47, 7.7012745887476e-15),
    (52, 3.3827039678878e-15),
    (57, 1.43036537751662e-15),
    (64, 5.52982599028024e-16),
    (71, -3.44371031809238e-16),
    (78, -8.19750483133154e-16),
    (87, -1.70476515936843e-15),
    (97, -1.79321422436018e-15),
    (107, -1.67655059790201e-15),
    (119, -4.73624324452307e-15),
    (132, -4.45740485548869e-15),
    (146, -4.18317209979165e-15),
    (162, -6.52022877316837e-15),
    (180, -7.44260733160549e-15),
    (200, -6.96632307535098e-15),
];

/// Lower bound curve `0.16 q^3` for the linear Gram matrix.
pub const LINEAR_GRAM_BOUND: [(usize, f64); 30] = [
    (10, 2.74348422496571e-05),
    (11, 2e-05),
    (12, 1.50262960180316e-05),
    (13, 1.15740740740741e-05),
    (15, 7.28862973760933e-06),
    (16, 5.92592592592593e-06),
    (18, 4.07083248524323e-06),
    (20, 2.91587694999271e-06),
    (22, 2.15959399632869e-06),
    (25, 1.44675925925926e-06),
    (28, 1.01610526850582e-06),
    (31, 7.40740740740741e-07),
    (34, 5.56529482149317e-07),
    (38, 3.94843345902513e-07),
    (42, 2.90187315912421e-07),
    (47, 2.05473822634996e-07),
    (52, 1.50771573527527e-07),
    (57, 1.13884839650146e-07),
    (64, 7.99849628269885e-08),
    (71, 5.83090379008746e-08),
    (78, 4.38084432012582e-08),
    (87, 3.14437722464689e-08),
    (97, 2.26056134259259e-08),
    (107, 1.6792385660646e-08),
    (119, 1.21726174535858e-08),
    (132, 8.89643702145509e-09),
    (146, 6.56033457706343e-09),
    (162, 4.79239236466464e-09),
    (180, 3.48715219797818e-09),
    (200, 2.53787814860266e-09),
];

/// Lower bound curve `0.0896 q^7` for the linear convolutional Gram matrix.
pub const LINEAR_CONV_BOUND: [(usize, f64); 30] = [
    (10, 1.46352610690138e-10),
    (11, 7e-11),
    (12, 3.59210682761495e-11),
    (13, 1.95357153063557e-11),
    (15, 6.64051543149538e-12),
    (16, 4.09693644261545e-12),
    (18, 1.70590793912325e-12),
    (20, 7.83110114638046e-13),
    (22, 3.8865385241491e-13),
    (25, 1.52622775830904e-13),
    (28, 6.69193464518236e-14),
    (31, 3.20073159579332e-14),
    (34, 1.64248140265887e-14),
    (38, 7.37370861232731e-15),
    (42, 3.59427285497066e-15),
    (47, 1.60617631803079e-15),
    (52, 7.80021920038067e-16),
    (57, 4.05304896941857e-16),
    (64, 1.77710952178743e-16),
    (71, 8.49985975231409e-17),
    (78, 4.36177203572242e-17),
    (87, 2.01191153826007e-17),
    (97, 9.31535497014796e-18),
    (107, 4.65539979535635e-18),
    (119, 2.19747523241397e-18),
    (132, 1.05730179720805e-18),
    (146, 5.19424014381204e-19),
    (162, 2.49641571487999e-19),
    (180, 1.18884934585263e-19),
    (200, 5.66404252262364e-20),
];
/// Value of `series` at sample size `n`, if present.
pub fn value_at(series: &[(usize, f64)], n: usize) -> Option<f64> {
    series.iter().find(|(m, _)| *m == n).map(|(_, v)| *v)
}

/// The sample sizes shared by all series.
pub fn sample_sizes() -> Vec<usize> {
    BASIC_GRAM_LAMBDA_MIN.iter().map(|(n, _)| *n).collect()
}
