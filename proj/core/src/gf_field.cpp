#include "snfc/gf_field.hpp"

#include <charconv>

#include "snfc/error.hpp"

namespace snfc {

struct Field::Tables {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::uint32_t q = 2;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint32_t> exp;  // exp[i] = g^i, length 2(q-1)
  std::vector<std::uint32_t> log;  // log[a] for a != 0
};

namespace {

// Digit-wise addition of base-p encodings.
std::uint32_t poly_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  while (a != 0 || b != 0) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

// Multiplies an encoded polynomial by x modulo the monic modulus.
std::uint32_t times_x(std::uint32_t a, std::uint32_t p, std::uint32_t m,
                      const std::vector<std::uint32_t>& modulus, std::uint32_t q) {
  const std::uint32_t top = a / (q / p);
  std::uint32_t shifted = (a % (q / p)) * p;
  if (top == 0) return shifted;
  // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
  std::uint32_t scale = 1;
  std::uint32_t out = 0;
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t digit = shifted % p;
    shifted /= p;
    const std::uint32_t sub = (top * modulus[i]) % p;
    out += ((digit + p - sub) % p) * scale;
    scale *= p;
  }
  return out;
}

std::shared_ptr<const Field::Tables> build_tables(std::uint32_t p, std::uint32_t m);

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::shared_ptr<const Field::Tables> build_tables(std::uint32_t p, std::uint32_t m) {
  auto t = std::make_shared<Field::Tables>();
  t->p = p;
  t->m = m;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) q *= p;
  t->q = static_cast<std::uint32_t>(q);
  t->exp.assign(2 * (t->q - 1), 0);
  t->log.assign(t->q, 0);

  if (m == 1) {
    for (std::uint32_t g = 1; g < p || p == 2; ++g) {
      std::uint32_t x = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < p - 1; ++i) {
        t->exp[i] = x;
        x = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * g) % p);
        if (x == 1 && i + 1 < p - 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
  } else {
    const std::uint32_t lower = t->q;  // number of choices for c_0..c_{m-1}
    bool found = false;
    for (std::uint32_t code = 0; code < lower && !found; ++code) {
      std::vector<std::uint32_t> mod(m + 1, 0);
      std::uint32_t c = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        mod[i] = c % p;
        c /= p;
      }
      mod[m] = 1;
      if (mod[0] == 0) continue;
      std::uint32_t x = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < t->q - 1; ++i) {
        t->exp[i] = x;
        x = times_x(x, p, m, mod, t->q);
        if (x == 1 && i + 1 < t->q - 1) {
          primitive = false;
          break;
        }
      }
      if (primitive && x == 1) {
        t->modulus = mod;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::InvalidArgument, "no primitive polynomial found");
  }
  for (std::uint32_t i = 0; i < t->q - 1; ++i) {
    t->exp[i + t->q - 1] = t->exp[i];
    t->log[t->exp[i]] = i;
  }
  return t;
}

}  // namespace

Field::Field() : Field(make(2)) {}

Field Field::make(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "field characteristic must be prime");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > (1u << 16)) throw Error(ErrorCode::InvalidArgument, "field order exceeds 2^16");
  }
  return Field(build_tables(p, m));
}

Field Field::smallest_above(std::uint64_t bound) {
  for (std::uint64_t q = bound + 1; q <= (1u << 16); ++q) {
    for (std::uint32_t p = 2; p <= q; ++p) {
      if (!is_prime(p)) continue;
      std::uint64_t v = 1;
      std::uint32_t m = 0;
      while (v < q) {
        v *= p;
        ++m;
      }
      if (v == q) return make(p, m);
      if (q % p == 0) break;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "no supported field order above bound");
}

Field Field::parse(std::string_view text) {
  const auto caret = text.find('^');
  auto parse_uint = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::Parse, "malformed field '" + std::string(text) + "'");
    }
    return v;
  };
  if (caret == std::string_view::npos) {
    const std::uint32_t q = parse_uint(text);
    if (is_prime(q)) return make(q, 1);
    // Accept a prime power order written as a single integer.
    for (std::uint32_t p = 2; p <= q; ++p) {
      if (q % p != 0) continue;
      std::uint32_t v = q;
      std::uint32_t m = 0;
      while (v % p == 0) {
        v /= p;
        ++m;
      }
      if (v == 1 && is_prime(p)) return make(p, m);
      break;
    }
    throw Error(ErrorCode::Parse, "field order " + std::string(text) + " is not a prime power");
  }
  return make(parse_uint(text.substr(0, caret)), parse_uint(text.substr(caret + 1)));
}

std::uint32_t Field::characteristic() const noexcept { return t_->p; }
std::uint32_t Field::degree() const noexcept { return t_->m; }
std::uint32_t Field::order() const noexcept { return t_->q; }
const std::vector<std::uint32_t>& Field::modulus() const noexcept { return t_->modulus; }

Elem Field::add(Elem a, Elem b) const noexcept {
  if (t_->m == 1) {
    const Elem s = a + b;
    return s >= t_->p ? s - t_->p : s;
  }
  if (t_->p == 2) return a ^ b;
  return poly_add(a, b, t_->p);
}

Elem Field::neg(Elem a) const noexcept {
  if (t_->m == 1) return a == 0 ? 0 : t_->p - a;
  if (t_->p == 2) return a;
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  while (a != 0) {
    const std::uint32_t d = a % t_->p;
    out += ((t_->p - d) % t_->p) * scale;
    a /= t_->p;
    scale *= t_->p;
  }
  return out;
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem Field::mul(Elem a, Elem b) const noexcept {
  if (a == 0 || b == 0) return 0;
  if (t_->m == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % t_->p);
  return t_->exp[t_->log[a] + t_->log[b]];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::Singular, "inverse of zero");
  const std::uint32_t n = t_->q - 1;
  return t_->exp[(n - t_->log[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = t_->q - 1;
  return t_->exp[(static_cast<std::uint64_t>(t_->log[a]) * (e % n)) % n];
}

std::string Field::to_string() const {
  if (t_->m == 1) return std::to_string(t_->p);
  return std::to_string(t_->p) + "^" + std::to_string(t_->m);
}

bool operator==(const Field& a, const Field& b) noexcept {
  return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->m == b.t_->m);
}

}  // namespace snfc
