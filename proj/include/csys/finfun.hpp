#pragma once

#include <string>
#include <vector>

namespace csys {

// A function stn(dom) -> stn(cod) between standard finite sets, stored as the
// dense table of its values. Equality is field-wise, so parallel functions
// with equal graphs but different codomains stay distinct.
struct FinFun {
  int dom = 0;
  int cod = 0;
  std::vector<int> values;

  friend bool operator==(const FinFun&, const FinFun&) = default;
};

// Validating constructor: every entry must be < cod.
FinFun ff_make(int dom, int cod, std::vector<int> values);

FinFun ff_identity(int n);

// Diagrammatic composition: first f, then g. Requires f.cod == g.dom.
FinFun ff_compose(const FinFun& f, const FinFun& g);

int ff_apply(const FinFun& f, int i);

// The increasing injection stn(n) -> stn(n+1) that skips the value i, 0 <= i <= n.
FinFun delta(int i, int n);

// The monotone surjection stn(n+2) -> stn(n+1) that takes the value i twice, 0 <= i <= n.
FinFun sigma(int i, int n);

// The initial-segment inclusion stn(n) -> stn(n+i).
FinFun iota(int n, int i);

bool ff_injective(const FinFun& f);
bool ff_surjective(const FinFun& f);

std::string ff_show(const FinFun& f);

// All functions stn(dom) -> stn(cod), in lexicographic order of value tables.
std::vector<FinFun> ff_enumerate(int dom, int cod);

}  // namespace csys
