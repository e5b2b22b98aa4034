#pragma once

// Published reference values: threshold tables and the two worked caterpillar
// examples. Values are as printed (10 significant digits for the tables).

#include <array>
#include <limits>
#include <vector>

namespace alimit::reference {

struct TableRow {
  double alpha;
  double value;
};

struct IntervalRow {
  double alpha;
  double tau1;
  double tau1_prime;  // +inf for alpha = 0
};

inline const std::vector<TableRow> kTau0Table = {
    {0.0, 2.058171027},    {1e-5, 2.058172154}, {1e-4, 2.058182294}, {1e-3, 2.058283826},
    {1e-2, 2.059312583},   {0.1, 2.071110742},  {0.3, 2.111760279},  {0.5, 2.191487884},
    {0.9, 2.727297451},    {0.9999, 2.999700025},
};

inline const std::vector<TableRow> kTau2Table = {
    {0.0, 2.324717958},  {1e-5, 2.324726949}, {1e-4, 2.324807890},
    {1e-3, 2.325619037}, {1e-2, 2.333907609}, {0.1, 2.439018189},
    {0.4, 4.271267076},  {0.49, 26.75245169}, {0.499, 251.7502495},
};

inline const std::vector<IntervalRow> kTau1Table = {
    {0.0, 2.058171027, std::numeric_limits<double>::infinity()},
    {1e-5, 2.058172154, 46.43683033},
    {1e-4, 2.058182294, 21.58805390},
    {1e-3, 2.058283826, 10.08827222},
    {1e-2, 2.059312583, 4.810633985},
    {0.1, 2.071110742, 2.479706668},
    {0.22, 2.092435365, 2.103408681},
    {0.2265409, 2.093719372, 2.094603459},
};

// First worked example: alpha = 0.1, lambda = 2.44, k = 100.
inline constexpr double kExampleAAlpha = 0.1;
inline constexpr double kExampleALambda = 2.44;
inline const std::vector<int> kExampleAR = {
    4, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1,
    1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1,
    1, 1, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1,
    1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 0,
};
// Printed spine values (3 decimals): b_1..b_16 and b_95..b_100.
inline const std::vector<double> kExampleAHead = {
    -0.555, -0.782, -0.757, -0.724, -0.676, -0.595, -0.879, -0.873,
    -0.866, -0.858, -0.85,  -0.841, -0.83,  -0.818, -0.804, -0.786,
};
inline const std::vector<double> kExampleATail = {-0.625, -0.499, -0.616, -0.478, -0.546, -0.856};
inline constexpr double kExampleARho = 2.4399999999999995;

// Second worked example: alpha = 0.01, lambda = 2.06, k = 100.
inline constexpr double kExampleBAlpha = 0.01;
inline constexpr double kExampleBLambda = 2.06;
inline const std::vector<int> kExampleBR = [] {
  std::vector<int> r(100, 0);
  r[0] = 2;
  for (int j : {11, 35, 60, 84}) r[j - 1] = 1;
  return r;
}();
// b_1..b_27 and b_90..b_100 (3 decimals).
inline const std::vector<double> kExampleBHead = {
    -1.074, -1.127, -1.171, -1.203, -1.225, -1.24,  -1.25,  -1.256, -1.259,
    -1.262, -0.775, -0.776, -0.776, -0.778, -0.78,  -0.783, -0.788, -0.796,
    -0.808, -0.828, -0.856, -0.895, -0.945, -1.003, -1.063, -1.118, -1.163,
};
inline const std::vector<double> kExampleBTail = {-0.785, -0.791, -0.801, -0.816, -0.839, -0.872,
                                                  -0.916, -0.97,  -1.03,  -1.088, -1.15};
inline constexpr double kExampleBB1 = -1.0738048780487808;
inline constexpr double kExampleBB21 = -0.8559245912071809;
inline constexpr double kExampleBB24 = -1.0026610413051416;

struct PrintedProduct {
  std::size_t left;
  std::size_t right;
  double value;
};
inline const std::vector<PrintedProduct> kExampleBProducts = {
    {10, 11, 0.9780973959081004},
    {9, 12, 0.9768462311806901},
    {1, 20, 0.8888252835590791},
};
inline constexpr double kExampleBRho = 2.059998455508993;

// Named constants.
inline constexpr double kAlphaStar = 0.2265409196609;
inline constexpr double kLambdaStar = 2.0938363213560;
inline constexpr double kCrossoverAlpha = 0.105572809;
inline constexpr double kCrossoverLambda = 2.4472135954;
inline constexpr double kDiscriminantQuarter = -176823.0 / 4096.0;

}  // namespace alimit::reference
