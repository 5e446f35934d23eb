#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pks {

// Symplectic encoding: bit q of z/x is the (z,x) pair of qubit q.
// (0,0)=I, (1,0)=Z, (0,1)=X, (1,1)=Y.
struct Pauli {
  uint64_t z = 0;
  uint64_t x = 0;
  int n = 0;

  friend bool operator==(const Pauli&, const Pauli&) = default;

  char letter(int q) const {
    static constexpr char kLetters[4] = {'I', 'Z', 'X', 'Y'};
    return kLetters[((z >> q) & 1) | (((x >> q) & 1) << 1)];
  }
  bool is_identity() const { return (z | x) == 0; }
  uint64_t support() const { return z | x; }
  int weight() const { return __builtin_popcountll(z | x); }

  void set_letter(int q, char c) {
    uint64_t bit = uint64_t{1} << q;
    z &= ~bit;
    x &= ~bit;
    if (c == 'Z' || c == 'Y') z |= bit;
    if (c == 'X' || c == 'Y') x |= bit;
  }

  // Ordering used for deterministic output; compares the letter strings
  // with qubit 0 most significant and I < Z < X < Y.
  friend bool operator<(const Pauli& a, const Pauli& b) {
    if (a.n != b.n) return a.n < b.n;
    for (int q = 0; q < a.n; ++q) {
      int la = letter_rank(a.letter(q)), lb = letter_rank(b.letter(q));
      if (la != lb) return la < lb;
    }
    return false;
  }

  static int letter_rank(char c) {
    switch (c) {
      case 'I': return 0;
      case 'Z': return 1;
      case 'X': return 2;
      default: return 3;
    }
  }
};

struct PauliHash {
  size_t operator()(const Pauli& p) const {
    uint64_t h = p.z * 0x9E3779B97F4A7C15ull ^ (p.x + 0x632BE59BD9B4E019ull + (h_shift(p.z)));
    return static_cast<size_t>(h ^ static_cast<uint64_t>(p.n));
  }
  static uint64_t h_shift(uint64_t v) { return (v << 17) | (v >> 47); }
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Pauli identity(int n) { return Pauli{0, 0, n}; }

inline Pauli parse_pauli(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty Pauli word");
  if (s.size() > 64) throw std::invalid_argument("Pauli word longer than 64 qubits");
  Pauli p{0, 0, static_cast<int>(s.size())};
  for (size_t q = 0; q < s.size(); ++q) {
    char c = s[q];
    if (c != 'I' && c != 'Z' && c != 'X' && c != 'Y')
      throw std::invalid_argument(std::string("illegal Pauli letter '") + c + "'");
    p.set_letter(static_cast<int>(q), c);
  }
  return p;
}

inline std::string format_pauli(const Pauli& p) {
  std::string s(static_cast<size_t>(p.n), 'I');
  for (int q = 0; q < p.n; ++q) s[static_cast<size_t>(q)] = p.letter(q);
  return s;
}

inline void require_same_n(const Pauli& a, const Pauli& b) {
  if (a.n != b.n) throw DimensionError("Pauli words act on different qubit counts");
}

// Number of qubits where the two words hold different non-identity letters.
inline int anticommuting_positions(const Pauli& a, const Pauli& b) {
  return __builtin_popcountll((a.z & b.x) ^ (a.x & b.z));
}

inline bool commutes(const Pauli& a, const Pauli& b) {
  require_same_n(a, b);
  return (anticommuting_positions(a, b) & 1) == 0;
}

// Phase exponent k (i^k) of the single-qubit product a*b with the standard
// matrices, so ZX = iY, XY = iZ, YZ = iX.
inline int letter_product_phase(int za, int xa, int zb, int xb) {
  int a = za | (xa << 1), b = zb | (xb << 1);
  if (a == 0 || b == 0 || a == b) return 0;
  // cyclic order Z(1) -> X(2) -> Y(3) -> Z gives +i
  int next = (a == 1) ? 2 : (a == 2) ? 3 : 1;
  return b == next ? 1 : 3;
}

struct PhasedPauli {
  Pauli word;
  int phase = 0;  // exponent of i, mod 4
};

inline PhasedPauli multiply(const PhasedPauli& a, const Pauli& b) {
  require_same_n(a.word, b);
  int k = a.phase;
  uint64_t active = (a.word.z | a.word.x) & (b.z | b.x);
  while (active) {
    int q = __builtin_ctzll(active);
    active &= active - 1;
    k += letter_product_phase((a.word.z >> q) & 1, (a.word.x >> q) & 1, (b.z >> q) & 1, (b.x >> q) & 1);
  }
  return {Pauli{a.word.z ^ b.z, a.word.x ^ b.x, b.n}, k & 3};
}

inline PhasedPauli product(const std::vector<Pauli>& list) {
  if (list.empty()) throw std::invalid_argument("product of an empty list");
  PhasedPauli acc{identity(list.front().n), 0};
  for (const auto& p : list) acc = multiply(acc, p);
  return acc;
}

inline std::string format_phase(int k) {
  switch (k & 3) {
    case 0: return "+1";
    case 1: return "+i";
    case 2: return "-1";
    default: return "-i";
  }
}

}  // namespace pks
