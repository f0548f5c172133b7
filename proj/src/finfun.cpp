#include "csys/finfun.hpp"

#include <numeric>
#include <sstream>

#include "csys/errors.hpp"

namespace csys {

FinFun ff_make(int dom, int cod, std::vector<int> values) {
  if (dom < 0 || cod < 0) throw IndexError("finite set cardinality must be non-negative");
  if (static_cast<int>(values.size()) != dom)
    throw IndexError("value table length does not match the domain");
  for (int v : values)
    if (v < 0 || v >= cod) throw IndexError("value outside the codomain");
  return FinFun{dom, cod, std::move(values)};
}

FinFun ff_identity(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return FinFun{n, n, std::move(v)};
}

FinFun ff_compose(const FinFun& f, const FinFun& g) {
  if (f.cod != g.dom)
    throw ComposeError("cannot compose: codomain " + std::to_string(f.cod) +
                       " does not match domain " + std::to_string(g.dom));
  std::vector<int> v(static_cast<size_t>(f.dom));
  for (int j = 0; j < f.dom; ++j) v[static_cast<size_t>(j)] = g.values[static_cast<size_t>(f.values[static_cast<size_t>(j)])];
  return FinFun{f.dom, g.cod, std::move(v)};
}

int ff_apply(const FinFun& f, int i) {
  if (i < 0 || i >= f.dom) throw IndexError("argument outside the domain");
  return f.values[static_cast<size_t>(i)];
}

FinFun delta(int i, int n) {
  if (i < 0 || i > n) throw IndexError("delta requires 0 <= i <= n");
  std::vector<int> v(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = j < i ? j : j + 1;
  return FinFun{n, n + 1, std::move(v)};
}

FinFun sigma(int i, int n) {
  if (i < 0 || i > n) throw IndexError("sigma requires 0 <= i <= n");
  std::vector<int> v(static_cast<size_t>(n + 2));
  for (int j = 0; j < n + 2; ++j) v[static_cast<size_t>(j)] = j <= i ? j : j - 1;
  return FinFun{n + 2, n + 1, std::move(v)};
}

FinFun iota(int n, int i) {
  if (n < 0 || i < 0) throw IndexError("iota requires non-negative arguments");
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return FinFun{n, n + i, std::move(v)};
}

bool ff_injective(const FinFun& f) {
  std::vector<char> seen(static_cast<size_t>(f.cod), 0);
  for (int v : f.values) {
    if (seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = 1;
  }
  return true;
}

bool ff_surjective(const FinFun& f) {
  std::vector<char> seen(static_cast<size_t>(f.cod), 0);
  for (int v : f.values) seen[static_cast<size_t>(v)] = 1;
  for (char c : seen)
    if (!c) return false;
  return true;
}

std::string ff_show(const FinFun& f) {
  std::ostringstream os;
  os << '(';
  for (int j = 0; j < f.dom; ++j) {
    if (j) os << ',';
    os << f.values[static_cast<size_t>(j)];
  }
  os << "):" << f.dom << "->" << f.cod;
  return os.str();
}

std::vector<FinFun> ff_enumerate(int dom, int cod) {
  std::vector<FinFun> out;
  if (dom == 0) {
    out.push_back(FinFun{0, cod, {}});
    return out;
  }
  if (cod == 0) return out;  // no functions from a nonempty set into the empty set
  std::vector<int> v(static_cast<size_t>(dom), 0);
  while (true) {
    out.push_back(FinFun{dom, cod, v});
    int k = dom - 1;
    while (k >= 0) {
      if (++v[static_cast<size_t>(k)] < cod) break;
      v[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace csys
