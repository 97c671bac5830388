#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use selforth::enumerator::ParametricEnumerator;

pub type Form = BTreeMap<String, BigInt>;

/// "3217056 - 16α + 153β" -> {"": 3217056, "α": -16, "β": 153}
pub fn parse_form(s: &str) -> Form {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Form::new();
    let mut term = String::new();
    let mut flush = |t: &mut String| {
        if t.is_empty() {
            return;
        }
        let (sign, body) = match t.chars().next().unwrap() {
            '-' => (-1, &t[1..]),
            '+' => (1, &t[1..]),
            _ => (1, &t[..]),
        };
        let split = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
        let (digits, name) = body.split_at(split);
        let coeff: BigInt = if digits.is_empty() { 1.into() } else { digits.parse().unwrap() };
        *out.entry(name.to_string()).or_insert_with(|| 0.into()) += coeff * sign;
        t.clear();
    };
    for c in s.chars() {
        if (c == '+' || c == '-') && !term.is_empty() {
            flush(&mut term);
        }
        term.push(c);
    }
    flush(&mut term);
    out.retain(|_, v| *v != 0.into());
    out
}

pub fn form_of(p: &ParametricEnumerator, w: usize) -> Form {
    let (c, coeffs) = p.integer_row(w).expect("integral coefficients");
    let mut out = Form::new();
    if c != 0.into() {
        out.insert(String::new(), c);
    }
    for (name, v) in p.params.iter().zip(coeffs) {
        if v != 0.into() {
            out.insert(name.clone(), v);
        }
    }
    out
}

pub fn check_table(p: &ParametricEnumerator, rows: &[(usize, &str)]) {
    for (w, s) in rows {
        assert_eq!(form_of(p, *w), parse_form(s), "weight {w}: got {}", p.render(*w));
    }
}

pub const N72: &[(usize, &str)] = &[
    (12, "α"),
    (16, "249849 - 12α"),
    (20, "18106704 + 66α"),
    (24, "462962955 - 220α"),
    (28, "4397342400 + 495α"),
    (32, "16602715899 - 792α"),
    (36, "25756721120 + 924α"),
];

pub const N96: &[(usize, &str)] = &[
    (12, "β"),
    (16, "α + 30β"),
    (20, "3217056 - 16α + 153β"),
    (24, "369844880 + 120α - 1712β"),
    (28, "18642839520 - 560α - 3084β"),
    (32, "422069980215 + 1820α + 69576β"),
    (36, "4552866656416 - 4368α - 323452β"),
    (40, "24292689565680 + 8008α + 842544β"),
    (44, "65727011639520 - 11440α - 1443090β"),
    (48, "91447669224080 + 12870α + 1718068β"),
];

pub const N120: &[(usize, &str)] = &[
    (12, "γ"),
    (16, "β + 72γ"),
    (20, "α + 26β + 2004γ"),
    (24, "39703755 - 20α + 39β + 25272γ"),
    (28, "6101289120 + 190α - 2148β + 100866γ"),
    (32, "475644139425 - 1140α + 4563β - 621288γ"),
    (36, "18824510698240 + 4845α + 71058β - 3973756γ"),
    (40, "397450513031544 - 15504α - 613259β + 18650088γ"),
    (44, "4630512364732800 + 38760α + 2564432β + 37650159γ"),
    (48, "30531599026535880 - 77520α - 7035366β - 434682288γ"),
    (52, "116023977311397120 + 125970α + 13909076β + 1412322984γ"),
    (56, "257257766776517715 - 167960α - 20667530β - 2641019472γ"),
    (60, "335200280030755776 + 184756α + 23538216β + 3223090716γ"),
];

pub const N144: &[(usize, &str)] = &[
    (12, "δ"),
    (16, "γ + 114δ"),
    (20, "β + 68γ + 5619δ"),
    (24, "α + 22β + 1722γ + 154820δ"),
    (28, "481008528 - 24α - 59β + 17684γ + 2550861δ"),
    (32, "90184804281 + 276α - 2152β + 11515γ + 24260742δ"),
    (36, "9542972508784 - 2024α + 13286β - 881064γ + 102200559δ"),
    (40, "559456467836112 + 10626α + 39788β - 982492γ - 215159832δ"),
    (44, "18950225255363376 - 42504α - 861482β + 30439192γ - 3223863171δ"),
    (48, "381888573368657355 + 134596α + 5423416β - 58206711γ + 568124866δ"),
    (52, "4686006803807297232 - 346104α - 21252317β - 458108660γ + 55774876695δ"),
    (56, "35648745873701148864 + 735471α + 59961226β + 3298378982γ - 82891353732δ"),
    (60, "170473729066542803616 - 1307504α - 129387017β - 11030355684γ - 479267780119δ"),
    (64, "517692242136399518331 + 1961256α + 220368688β + 24037485819γ + 2310638405958δ"),
    (68, "1005386522059285093728 - 2496144α - 301497244β - 37463473392γ - 4857003070893δ"),
    (72, "1253789175212713133280 + 2704156α + 334387688β + 43291346040γ + 6110981295024δ"),
];

/// A_22 and A_24 with the constant 26391755 attached to A_22.
pub const C120_PRINTED_22_24: &[(usize, &str)] = &[
    (22, "64b - 3d + 28e + 1009f + 19800g + 339180h + 26391755"),
    (24, "4096a - 384b - 20c - 88d - 441e - 1218f + 25080g + 789840h"),
];

// The constant 26391755 sits on A_24; A_22 has no constant term.
pub const C120: &[(usize, &str)] = &[
    (10, "h"),
    (12, "g + 30h"),
    (14, "f + 24g + 425h"),
    (16, "e + 18f + 264g + 3760h"),
    (18, "d + 12e + 139f + 1736g + 23100h"),
    (20, "c + 6d + 50e + 564f + 7380g + 103256h"),
    (22, "64b - 3d + 28e + 1009f + 19800g + 339180h"),
    (24, "26391755 + 4096a - 384b - 20c - 88d - 441e - 1218f + 25080g + 789840h"),
    (26, "265912320 - 49152a - 64b - 102d - 1288e - 10717f - 35640g + 1096410h"),
    (28, "2968094880 + 221184a + 4864b + 190c + 564d + 364e - 20424f - 238590g - 118980h"),
    (30, "29559455744 - 311296a - 6720b + 1210d + 7800e + 7631f - 473880g - 4961862h"),
    (32, "238259763105 - 946176a - 25984b - 1140c - 1944d + 9971e + 103766f - 182952g - 13088880h"),
    (40, "198725556937080 + 32980992a - 28160b - 15504c + 4896d + 161525e - 599494f - 4385880g + 91345008h"),
];

pub const S120: &[(usize, &str)] = &[
    (12, "a"),
    (16, "17250 - 24a - b"),
    (20, "-315744 + 276a + 22b + c"),
    (24, "42581630 - 2024a - 231b - 20c - 64d"),
    (28, "6084129120 + 10626a + 1540b + 190c + 1152d + 4096e"),
    (32, "475718702550 - 42504a - 7315b - 1140c - 9792d - 65536e - 262144f"),
    (36, "18824260734240 + 134596a + 26334b + 4845c + 52224d + 491520e + 3670016f + 16777216g"),
];

