#pragma once

#include <cmath>
#include <string>
#include <vector>

// Worked approximations with the values quoted in print (mu, error) and the
// values computed independently with mpmath at 400 bits (oracle_mu to 6
// decimals, oracle_error to 5 significant digits).
namespace golden {

struct Row {
  const char* label;
  const char* target;
  const char* model;
  std::vector<long> params;
  const char* printed_mu;
  double printed_error;
  double oracle_mu;
  double oracle_error;
};

inline const std::vector<Row>& rows() {
  static const std::vector<Row> table{
      {"pi ~ 22/7", "pi", "a1/a2", {22, 7}, "1.55", 1.2e-3, 1.552093, 1.2645e-3},
      {"pi ~ 355/113", "pi", "a1/a2", {355, 113}, "1.53", 2.6e-7, 1.536075, 2.6676e-7},
      {"pi ~ sqrt2+sqrt3", "pi", "sqrt(a1)+sqrt(a2)", {2, 3}, "3.63", 4.6e-3, 3.633835, 4.6717e-3},
      {"pi ~ 2 sqrt(sqrt6)", "pi", "a1*sqrt(sqrt(a2))", {2, 6}, "2.26", 1.1e-2, 2.260372, 1.1423e-2},
      {"pi ~ (20/9) sqrt2", "pi", "a1/a2*sqrt(a3)", {20, 9, 2}, "1.35", 1.1e-3, 1.351218, 1.1042e-3},
      {"pi ~ (20/11) sqrt3", "pi", "a1/a2*sqrt(a3)", {20, 11, 3}, "0.92", 7.6e-3, 0.928119, 7.5906e-3},
      {"pi ~ Kochanski", "pi", "sqrt(a1/a2-a3*sqrt(a4))", {40, 3, 2, 3}, "1.65", 5.9e-5, 1.653285, 5.9315e-5},
      {"pi ~ Ramanujan (3/5)(3+sqrt5)", "pi", "a1/a2*(a3+sqrt(a4))", {3, 5, 3, 5}, "2.04", 4.8e-5, 2.046911, 4.8133e-5},
      {"pi ~ sqrt(6(sqrt7-1))", "pi", "sqrt(a1*(sqrt(a2)-a3))", {6, 7, 1}, "2.22", 7.8e-4, 2.220781, 7.8031e-4},
      {"pi ~ 3+1/(sqrt65-1)", "pi", "a1+a2/(sqrt(a3)-a4)", {3, 1, 65, 1}, "2.53", 5.1e-6, 2.527282, 5.1237e-6},
      {"pi ~ 3+(sqrt30-1)/(10 sqrt10)", "pi", "a1+(sqrt(a2)-a3)/(a4*sqrt(a5))", {3, 30, 1, 10, 10}, "1.39", 1e-5, 1.386418, 1.0349e-5},
      {"pi ~ (17/11)(4/sqrt15+1)", "pi", "a1/a2*(a3/sqrt(a4)+a5)", {17, 11, 4, 15, 1}, "1.68", 4.8e-7, 1.682269, 4.8303e-7},
      {"e ~ 19/7", "e", "a1/a2", {19, 7}, "1.33", 4e-3, 1.333736, 3.9961e-3},
      {"e ~ 3-(1/3)sqrt(5/7)", "e", "a1-1/a2*sqrt(a3/a4)", {3, 3, 5, 7}, "3.0", 8.6e-8, 3.000675, 8.6631e-8},
      {"e ~ 8/3+(1/11)(5/(2 sqrt2)-6/5)", "e", "a1/a2+1/a3*(a4/(a5*sqrt(a6))-a7/a8)", {8, 3, 11, 5, 2, 2, 6, 5}, "1.58", 1.6e-8, 1.584116, 1.5750e-8},
      {"e ~ sqrt(4 sqrt2+sqrt3)", "e", "sqrt(a1*sqrt(a2)+sqrt(a3))", {4, 2, 3}, "3.6", 2.8e-5, 3.615765, 2.7783e-5},
      {"e ~ (35-sqrt26)/11", "e", "(a1-sqrt(a2))/a3", {35, 26, 11}, "1.35", 1.1e-5, 1.349318, 1.0875e-5},
      {"e ~ (8 sqrt3-2 sqrt2+8)/7", "e", "(a1*sqrt(a2)-a3*sqrt(a4)+a5)/a6", {8, 3, 2, 2, 8, 7}, "1.73", 9.3e-7, 1.732774, 9.3380e-7},
      {"e ~ 5 sqrt2-3 sqrt3+13 sqrt6-31", "e", "a1*sqrt(a2)-a3*sqrt(a4)+a5*sqrt(a6)-a7", {5, 2, 3, 3, 13, 6, 31}, "1.33", 2.2e-7, 1.329800, 2.1688e-7},
      {"e ~ (3 sqrt5-2)/sqrt3", "e", "(a1*sqrt(a2)-a3)/sqrt(a4)", {3, 5, 2, 3}, "3.3", 9.8e-7, 3.297108, 9.7937e-7},
      {"sqrt(e) ~ sqrt3-1/12", "sqrt_e", "sqrt(a1)-1/a2", {3, 12}, "3.6", 3.8e-6, 3.622540, 3.7965e-6},
      {"sqrt(pi) ~ (13 sqrt7-14 sqrt5)/4+1", "sqrt_pi", "(a1*sqrt(a2)-a3*sqrt(a4))/a5+a6", {13, 7, 14, 5, 4, 1}, "1.86", 1.1e-8, 1.860914, 1.1195e-8},
      {"pi ~ 1+sqrt(8/5 sqrt2-sqrt3-4 sqrt5+13)", "pi", "a1+sqrt(a2/a3*sqrt(a4)-sqrt(a5)-a6*sqrt(a7)+a8)", {1, 8, 5, 2, 3, 4, 5, 13}, "1.68", 2.6e-8, 1.685219, 2.6074e-8},
      {"e/pi ~ (11/5)(sqrt2+sqrt7-11/3)", "e_over_pi", "a1/a2*(sqrt(a3)+sqrt(a4)-a5/a6)", {11, 5, 2, 7, 11, 3}, "1.6", 7.5e-8, 1.602587, 7.5464e-8},
      {"sqrt(e^2+pi^2) ~ 4+119/11880+sqrt3/12", "sqrt_e2_plus_pi2", "a1+a2/a3+sqrt(a4)/a5", {4, 119, 11880, 3, 12}, "1.52", 9.3e-13, 1.522617, 9.2789e-13},
  };
  return table;
}

// Half a unit in the last printed place, but never below 0.02.
inline double mu_tolerance(const std::string& printed) {
  const auto dot = printed.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  return std::max(0.02, 0.5 * std::pow(10.0, -decimals));
}

// One significant digit: within half a unit of the printed leading digit.
inline bool error_matches(double computed, double printed) {
  const double unit = std::pow(10.0, std::floor(std::log10(printed)));
  return std::fabs(computed - printed) <= 0.5 * unit;
}

}  // namespace golden
