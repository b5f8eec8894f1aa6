// Copyright 2026 The catcrypt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catcrypt/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <set>

#include "catcrypt/error.hpp"

namespace catcrypt {

namespace {

std::atomic<std::size_t> g_max_port_product{std::size_t{1} << 20};

std::string describe(const Ports& ports) {
  std::string s = "[";
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (i) s += ",";
    s += ports[i].name + "(" + std::to_string(ports[i].size) + ")";
  }
  return s + "]";
}

Scalar sum_tol(bool exact) {
  return exact ? Scalar(0) : Scalar::from_double(kTolSum);
}

}  // namespace

Alphabet Alphabet::make(std::string name, std::size_t size,
                        std::vector<std::string> labels) {
  if (size < 1)
    fail(ErrorCode::InvalidArgument, "alphabet '" + name + "' has size 0");
  if (!labels.empty()) {
    if (labels.size() != size)
      fail(ErrorCode::InvalidArgument,
           "alphabet '" + name + "' label count differs from size");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
      fail(ErrorCode::InvalidArgument,
           "alphabet '" + name + "' has repeated labels");
  }
  return Alphabet{std::move(name), size, std::move(labels)};
}

std::string Alphabet::label(std::size_t i) const {
  return labels.empty() ? std::to_string(i) : labels.at(i);
}

std::size_t max_port_product() { return g_max_port_product.load(); }
void set_max_port_product(std::size_t cap) { g_max_port_product.store(cap); }

std::size_t port_product(std::span<const Alphabet> ports) {
  const std::size_t cap = max_port_product();
  std::size_t n = 1;
  for (const auto& a : ports) {
    if (a.size == 0) fail(ErrorCode::InvalidArgument, "empty alphabet");
    if (n > cap / a.size)
      fail(ErrorCode::SizeLimit, "port product exceeds " + std::to_string(cap));
    n *= a.size;
  }
  return n;
}

std::vector<std::size_t> decode_tuple(std::size_t index,
                                      std::span<const Alphabet> ports) {
  std::vector<std::size_t> digits(ports.size());
  for (std::size_t i = ports.size(); i-- > 0;) {
    digits[i] = index % ports[i].size;
    index /= ports[i].size;
  }
  return digits;
}

std::size_t encode_tuple(std::span<const std::size_t> digits,
                         std::span<const Alphabet> ports) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (digits[i] >= ports[i].size)
      fail(ErrorCode::ElementOutOfRange,
           "element " + std::to_string(digits[i]) + " outside " +
               ports[i].name);
    index = index * ports[i].size + digits[i];
  }
  return index;
}

Kernel::Kernel(Ports dom, Ports cod, std::vector<Scalar> data)
    : dom_(std::move(dom)),
      cod_(std::move(cod)),
      rows_(port_product(cod_)),
      cols_(port_product(dom_)),
      data_(std::move(data)) {
  port_product(std::vector<Alphabet>{Alphabet{"rows", rows_, {}},
                                     Alphabet{"cols", cols_, {}}});
  if (data_.size() != rows_ * cols_)
    fail(ErrorCode::DimensionMismatch,
         "table has " + std::to_string(data_.size()) + " entries, expected " +
             std::to_string(rows_) + "x" + std::to_string(cols_) + " for " +
             describe(dom_) + " -> " + describe(cod_));
}

Kernel Kernel::make(Ports dom, Ports cod, std::vector<Scalar> table) {
  Kernel k(std::move(dom), std::move(cod), std::move(table));
  k.validate();
  return k;
}

Kernel Kernel::make(Ports dom, Ports cod,
                    const std::vector<std::vector<Scalar>>& rows) {
  std::vector<Scalar> flat;
  const std::size_t ncols = port_product(dom);
  for (const auto& row : rows) {
    if (row.size() != ncols)
      fail(ErrorCode::DimensionMismatch,
           "row has " + std::to_string(row.size()) + " entries, expected " +
               std::to_string(ncols));
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return make(std::move(dom), std::move(cod), std::move(flat));
}

Kernel Kernel::trusted(Ports dom, Ports cod, std::vector<Scalar> table) {
  return Kernel(std::move(dom), std::move(cod), std::move(table));
}

bool Kernel::is_exact() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Scalar& s) { return s.is_exact(); });
}

bool Kernel::is_deterministic() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) {
    return s == Scalar(0) || s == Scalar(1);
  });
}

Kernel Kernel::to_float() const {
  std::vector<Scalar> d;
  d.reserve(data_.size());
  for (const auto& s : data_) d.push_back(s.to_float());
  return Kernel(dom_, cod_, std::move(d));
}

void Kernel::validate() const {
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (data_[i].sign() < 0)
      fail(ErrorCode::NegativeEntry,
           "entry (" + std::to_string(i / cols_) + "," +
               std::to_string(i % cols_) + ") is " + data_[i].str());
  const Scalar tol = sum_tol(is_exact());
  for (std::size_t c = 0; c < cols_; ++c) {
    Scalar sum = 0;
    for (std::size_t r = 0; r < rows_; ++r) sum += at(r, c);
    if (abs(sum - Scalar(1)) > tol)
      fail(ErrorCode::ColumnNotStochastic,
           "column " + std::to_string(c) + " sums to " + sum.str());
  }
}

Dist Dist::make(Alphabet alphabet, std::vector<Scalar> weights) {
  Kernel::make({}, {alphabet}, weights);
  return Dist{std::move(alphabet), std::move(weights)};
}

Kernel Dist::as_state() const {
  return Kernel::trusted({}, {alphabet}, weights);
}

Dist Dist::from_state(const Kernel& state) {
  if (!state.dom().empty() || state.cod().size() != 1)
    fail(ErrorCode::InterfaceMismatch, "not a state on a single alphabet");
  return Dist{state.cod()[0], state.data()};
}

Kernel compose(const Kernel& g, const Kernel& f) {
  if (f.cod() != g.dom())
    fail(ErrorCode::InterfaceMismatch,
         "cod " + describe(f.cod()) + " vs dom " + describe(g.dom()));
  const std::size_t n = f.rows();
  std::vector<Scalar> out(g.rows() * f.cols());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar& gk = g.at(r, k);
      if (gk.is_zero()) continue;
      for (std::size_t c = 0; c < f.cols(); ++c) {
        const Scalar& fk = f.at(k, c);
        if (!fk.is_zero()) out[r * f.cols() + c] += gk * fk;
      }
    }
  return Kernel::trusted(f.dom(), g.cod(), std::move(out));
}

Kernel tensor(const Kernel& f, const Kernel& g) {
  Ports dom = f.dom();
  dom.insert(dom.end(), g.dom().begin(), g.dom().end());
  Ports cod = f.cod();
  cod.insert(cod.end(), g.cod().begin(), g.cod().end());
  const std::size_t cols = f.cols() * g.cols();
  std::vector<Scalar> out(f.rows() * g.rows() * cols);
  for (std::size_t r1 = 0; r1 < f.rows(); ++r1)
    for (std::size_t c1 = 0; c1 < f.cols(); ++c1) {
      const Scalar& a = f.at(r1, c1);
      if (a.is_zero()) continue;
      for (std::size_t r2 = 0; r2 < g.rows(); ++r2)
        for (std::size_t c2 = 0; c2 < g.cols(); ++c2) {
          const Scalar& b = g.at(r2, c2);
          if (b.is_zero()) continue;
          out[(r1 * g.rows() + r2) * cols + c1 * g.cols() + c2] = a * b;
        }
    }
  return Kernel::trusted(std::move(dom), std::move(cod), std::move(out));
}

Kernel tensor(std::initializer_list<Kernel> factors) {
  Kernel acc;
  for (const auto& k : factors) acc = tensor(acc, k);
  return acc;
}

Kernel deterministic(Ports dom, Ports cod, std::span<const std::size_t> image) {
  const std::size_t rows = port_product(cod), cols = port_product(dom);
  if (image.size() != cols)
    fail(ErrorCode::DimensionMismatch, "image size differs from dom size");
  std::vector<Scalar> out(rows * cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (image[c] >= rows)
      fail(ErrorCode::ElementOutOfRange, "image outside codomain");
    out[image[c] * cols + c] = 1;
  }
  return Kernel::trusted(std::move(dom), std::move(cod), std::move(out));
}

Kernel identity(Ports ports) {
  const std::size_t n = port_product(ports);
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  return deterministic(ports, ports, image);
}

Kernel swap(const Alphabet& a, const Alphabet& b) {
  const std::size_t perm[] = {1, 0};
  return permutation({a, b}, perm);
}

Kernel permutation(Ports ports, std::span<const std::size_t> perm) {
  if (perm.size() != ports.size())
    fail(ErrorCode::BadPermutation, "permutation length differs from ports");
  std::vector<bool> seen(ports.size());
  for (auto p : perm) {
    if (p >= ports.size() || seen[p])
      fail(ErrorCode::BadPermutation, "not a permutation");
    seen[p] = true;
  }
  Ports cod;
  for (auto p : perm) cod.push_back(ports[p]);
  const std::size_t n = port_product(ports);
  std::vector<std::size_t> image(n), out_digits(ports.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto digits = decode_tuple(i, ports);
    for (std::size_t k = 0; k < perm.size(); ++k) out_digits[k] = digits[perm[k]];
    image[i] = encode_tuple(out_digits, cod);
  }
  return deterministic(std::move(ports), std::move(cod), image);
}

Kernel copy(const Alphabet& a, std::size_t copies) {
  Ports cod(copies, a);
  std::vector<std::size_t> image(a.size), digits(copies);
  for (std::size_t x = 0; x < a.size; ++x) {
    std::fill(digits.begin(), digits.end(), x);
    image[x] = encode_tuple(digits, cod);
  }
  return deterministic({a}, std::move(cod), image);
}

Kernel deletion(Ports ports) {
  std::vector<std::size_t> image(port_product(ports), 0);
  return deterministic(std::move(ports), {}, image);
}

Kernel point(Ports ports, std::span<const std::size_t> elements) {
  if (elements.size() != ports.size())
    fail(ErrorCode::ElementOutOfRange, "element tuple length differs");
  const std::size_t index = encode_tuple(elements, ports);
  const std::size_t image[] = {index};
  return deterministic({}, std::move(ports), image);
}

Kernel point(const Alphabet& a, std::size_t element) {
  const std::size_t e[] = {element};
  return point(Ports{a}, e);
}

Kernel uniform(Ports ports) {
  const std::size_t n = port_product(ports);
  std::vector<Scalar> w(n, Scalar::ratio(1, static_cast<long>(n)));
  return Kernel::trusted({}, std::move(ports), std::move(w));
}

namespace {

void require_same_interface(const Kernel& f, const Kernel& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    fail(ErrorCode::InterfaceMismatch,
         describe(f.dom()) + "->" + describe(f.cod()) + " vs " +
             describe(g.dom()) + "->" + describe(g.cod()));
}

}  // namespace

bool equal_within(const Kernel& f, const Kernel& g, const Scalar& tol) {
  require_same_interface(f, g);
  for (std::size_t i = 0; i < f.data().size(); ++i)
    if (abs(f.data()[i] - g.data()[i]) > tol) return false;
  return true;
}

Scalar channel_distance(const Kernel& f, const Kernel& g) {
  require_same_interface(f, g);
  Scalar best = 0;
  for (std::size_t c = 0; c < f.cols(); ++c) {
    Scalar l1 = 0;
    for (std::size_t r = 0; r < f.rows(); ++r) l1 += abs(f.at(r, c) - g.at(r, c));
    best = max(best, l1);
  }
  return best / Scalar(2);
}

Kernel marginalize(const Kernel& f, std::span<const std::size_t> keep) {
  std::vector<bool> seen(f.cod().size());
  Ports cod;
  for (auto k : keep) {
    if (k >= f.cod().size() || seen[k])
      fail(ErrorCode::BadPortSelection, "bad cod port selection");
    seen[k] = true;
    cod.push_back(f.cod()[k]);
  }
  const std::size_t rows = port_product(cod);
  std::vector<Scalar> out(rows * f.cols());
  std::vector<std::size_t> kept(keep.size());
  for (std::size_t r = 0; r < f.rows(); ++r) {
    auto digits = decode_tuple(r, f.cod());
    for (std::size_t i = 0; i < keep.size(); ++i) kept[i] = digits[keep[i]];
    const std::size_t nr = encode_tuple(kept, cod);
    for (std::size_t c = 0; c < f.cols(); ++c)
      if (!f.at(r, c).is_zero()) out[nr * f.cols() + c] += f.at(r, c);
  }
  return Kernel::trusted(f.dom(), std::move(cod), std::move(out));
}

}  // namespace catcrypt
