#include "fitpa/types.hpp"

#include <charconv>
#include <sstream>

#include "fitpa/errors.hpp"

namespace fitpa {

std::optional<Rat> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    try {
      BigInt num(std::string(text.substr(0, slash)));
      BigInt den(std::string(text.substr(slash + 1)));
      if (den == 0) return std::nullopt;
      return Rat(num, den);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    // Decimal literal: exact scaling by a power of ten.
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    try {
      BigInt ip(digits.empty() || digits == "-" ? std::string(digits + "0") : digits);
      BigInt scale = 1;
      BigInt fp = 0;
      for (char ch : frac) {
        fp = fp * 10 + (ch - '0');
        scale *= 10;
      }
      const bool neg = !digits.empty() && digits[0] == '-';
      BigInt num = ip * scale + (neg ? -fp : fp);
      return Rat(num, scale);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  try {
    return Rat(BigInt(std::string(text)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  if (denominator(r) == 1) {
    os << numerator(r);
  } else {
    os << numerator(r) << "/" << denominator(r);
  }
  return os.str();
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

TypeAssignment TypeAssignment::create(int m, std::vector<Rat> p) {
  if (m < 1 || m > 30) throw ConfigError("m must be in [1, 30]");
  if (p.size() != static_cast<std::size_t>(m) + 1)
    throw ConfigError("type assignment needs exactly m+1 probabilities");
  for (const Rat& v : p)
    if (v < 0 || v > 1) throw ConfigError("type assignment probabilities must lie in [0,1]");
  TypeAssignment ta;
  ta.m = m;
  ta.p = std::move(p);
  ta.p_d.reserve(ta.p.size());
  for (const Rat& v : ta.p) ta.p_d.push_back(to_double(v));
  ta.is_linear = true;
  for (int k = 0; k <= m; ++k) {
    if (ta.p[k] != Rat(k, m)) {
      ta.is_linear = false;
      break;
    }
  }
  return ta;
}

TypeAssignment TypeAssignment::linear(int m) {
  std::vector<Rat> p;
  p.reserve(m + 1);
  for (int k = 0; k <= m; ++k) p.emplace_back(k, m);
  return create(m, std::move(p));
}

bool TypeAssignment::endpoint_absorbing() const { return p.front() == 0 && p.back() == 1; }

void validate_model(const TypeAssignment& ta, const FitnessModel& fm) {
  if (ta.m < 1 || ta.p.size() != static_cast<std::size_t>(ta.m) + 1 ||
      ta.p_d.size() != ta.p.size())
    throw ConfigError("type assignment not built via TypeAssignment::create");
  const Rat neg_m(-ta.m);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PlainFitness>) {
          if (f.alpha <= neg_m) throw ConfigError("plain model requires alpha > -m");
        } else if constexpr (std::is_same_v<T, MultiplicativeFitness>) {
          if (f.phi <= 0) throw ConfigError("multiplicative model requires phi > 0");
          if (f.alpha <= neg_m) throw ConfigError("multiplicative model requires alpha > -m");
        } else {
          if (f.alpha_red <= neg_m || f.alpha_blue <= neg_m)
            throw ConfigError("additive model requires alpha1, alpha2 > -m");
          if (f.alpha_red == f.alpha_blue)
            throw ConfigError("additive model requires alpha1 != alpha2 (equal values are the plain model)");
        }
      },
      fm);
}

std::string model_name(const FitnessModel& fm) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PlainFitness>) {
          (void)f;
          return "plain";
        } else if constexpr (std::is_same_v<T, MultiplicativeFitness>) {
          return "multiplicative";
        } else {
          return "additive";
        }
      },
      fm);
}

bool urn_eligible(const FitnessModel& fm) {
  if (const auto* p = std::get_if<PlainFitness>(&fm)) return p->alpha == 0;
  if (const auto* m = std::get_if<MultiplicativeFitness>(&fm)) return m->alpha == 0;
  return false;
}

Rat effective_phi(const FitnessModel& fm) {
  if (const auto* m = std::get_if<MultiplicativeFitness>(&fm)) return m->phi;
  return Rat(1);
}

Rat alpha_of(const FitnessModel& fm, Color c) {
  if (const auto* p = std::get_if<PlainFitness>(&fm)) return p->alpha;
  if (const auto* m = std::get_if<MultiplicativeFitness>(&fm)) return m->alpha;
  const auto& a = std::get<AdditiveFitness>(fm);
  return c == Color::Red ? a.alpha_red : a.alpha_blue;
}

}  // namespace fitpa
