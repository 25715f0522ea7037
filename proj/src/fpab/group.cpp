#include <mutex>
#include <sstream>

#include "yoneda/errors.hpp"
#include "yoneda/fpab.hpp"

namespace yoneda {

std::string CanonicalForm::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << (rank == 1 ? std::string("Z") : "Z^" + std::to_string(rank));
    first = false;
  }
  for (const auto& d : factors) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

struct FpAbGroup::Data {
  std::size_t gens = 0;
  IntMatrix relations;
  bool free_presentation = true;

  mutable std::once_flag canon_once;
  mutable CanonicalForm canon;
  mutable std::once_flag lattice_once;
  mutable std::unique_ptr<ColumnEchelon> lattice;
};

FpAbGroup::FpAbGroup() : FpAbGroup(make(0, IntMatrix(0, 0))) {}

FpAbGroup FpAbGroup::make(std::size_t gens, IntMatrix relations) {
  if (relations.rows() != gens) {
    throw DimensionMismatch("relation matrix has " + std::to_string(relations.rows()) + " rows for " +
                            std::to_string(gens) + " generators");
  }
  auto d = std::make_shared<Data>();
  d->gens = gens;
  d->free_presentation = relations.is_zero();
  d->relations = std::move(relations);
  return FpAbGroup(std::move(d));
}

FpAbGroup FpAbGroup::free(std::size_t rank) { return make(rank, IntMatrix(rank, 0)); }

FpAbGroup FpAbGroup::cyclic(const Integer& n) {
  if (n.is_zero()) return free(1);
  return make(1, IntMatrix{{n.abs()}});
}

FpAbGroup FpAbGroup::from_canonical(const CanonicalForm& form) {
  const std::size_t t = form.factors.size();
  IntMatrix rel(t + form.rank, t);
  for (std::size_t i = 0; i < t; ++i) rel(i, i) = form.factors[i];
  return make(t + form.rank, std::move(rel));
}

FpAbGroup FpAbGroup::power(const FpAbGroup& a, std::size_t r) {
  if (a.relations().cols() == 0) return free(a.gens() * r);
  return make(a.gens() * r, IntMatrix::kron(IntMatrix::identity(r), a.relations()));
}

std::size_t FpAbGroup::gens() const { return data_->gens; }
const IntMatrix& FpAbGroup::relations() const { return data_->relations; }
bool FpAbGroup::has_free_presentation() const { return data_->free_presentation; }

const CanonicalForm& FpAbGroup::canonical() const {
  std::call_once(data_->canon_once, [this] {
    CanonicalForm form;
    if (data_->free_presentation) {
      form.rank = data_->gens;
    } else {
      std::size_t nonzero = 0;
      for (const auto& d : smith_diagonal(data_->relations)) {
        if (d.is_zero()) continue;
        ++nonzero;
        if (!d.is_one()) form.factors.push_back(d);
      }
      form.rank = data_->gens - nonzero;
    }
    data_->canon = std::move(form);
  });
  return data_->canon;
}

const ColumnEchelon& FpAbGroup::relation_lattice() const {
  std::call_once(data_->lattice_once,
                 [this] { data_->lattice = std::make_unique<ColumnEchelon>(data_->relations, false); });
  return *data_->lattice;
}

bool FpAbGroup::same_presentation(const FpAbGroup& other) const {
  if (data_ == other.data_) return true;
  return data_->gens == other.data_->gens && data_->relations == other.data_->relations;
}

std::optional<Integer> FpAbGroup::order() const {
  const auto& c = canonical();
  if (c.rank > 0) return std::nullopt;
  Integer n(1);
  for (const auto& d : c.factors) n *= d;
  return n;
}

bool FpAbGroup::is_zero_element(const IntVector& x) const {
  if (x.size() != gens()) throw DimensionMismatch("element has wrong number of coordinates");
  bool all_zero = true;
  for (const auto& v : x)
    if (!v.is_zero()) {
      all_zero = false;
      break;
    }
  if (all_zero) return true;
  if (data_->free_presentation) return false;
  return relation_lattice().contains(x);
}

bool FpAbGroup::equal_elements(const IntVector& x, const IntVector& y) const {
  if (x.size() != y.size()) throw DimensionMismatch("elements have different lengths");
  IntVector d = x;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= y[i];
  return is_zero_element(d);
}

FpAbGroup make_group(std::size_t gens, IntMatrix relations) { return FpAbGroup::make(gens, std::move(relations)); }

// ---------------------------------------------------------------------------
// Element

Element::Element(FpAbGroup group, IntVector coords) : group_(std::move(group)), coords_(std::move(coords)) {
  if (coords_.size() != group_.gens()) throw DimensionMismatch("element has wrong number of coordinates");
}

Element operator+(const Element& a, const Element& b) {
  if (!a.group_.same_presentation(b.group_)) throw DimensionMismatch("adding elements of different groups");
  IntVector c = a.coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return {a.group_, std::move(c)};
}

Element operator-(const Element& a, const Element& b) { return a + (-b); }

Element operator-(const Element& a) {
  IntVector c = a.coords_;
  for (auto& x : c) x.negate();
  return {a.group_, std::move(c)};
}

Element operator*(const Integer& k, const Element& a) {
  IntVector c = a.coords_;
  for (auto& x : c) x *= k;
  return {a.group_, std::move(c)};
}

bool operator==(const Element& a, const Element& b) {
  if (!a.group_.same_presentation(b.group_)) return false;
  return a.group_.equal_elements(a.coords_, b.coords_);
}

// ---------------------------------------------------------------------------
// FpAbHom

FpAbHom FpAbHom::make(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix) {
  FpAbHom f = trusted(std::move(src), std::move(tgt), std::move(matrix));
  if (!f.is_well_defined()) {
    throw IllDefined("matrix " + f.matrix_.to_string() + " does not respect the source relations");
  }
  return f;
}

FpAbHom FpAbHom::trusted(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix) {
  if (matrix.rows() != tgt.gens() || matrix.cols() != src.gens()) {
    throw DimensionMismatch("hom matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                            ", expected " + std::to_string(tgt.gens()) + "x" + std::to_string(src.gens()));
  }
  return FpAbHom(std::move(src), std::move(tgt), std::move(matrix));
}

FpAbHom FpAbHom::identity(const FpAbGroup& g) { return trusted(g, g, IntMatrix::identity(g.gens())); }

FpAbHom FpAbHom::zero(const FpAbGroup& src, const FpAbGroup& tgt) {
  return trusted(src, tgt, IntMatrix(tgt.gens(), src.gens()));
}

bool FpAbHom::is_well_defined() const {
  if (src_.has_free_presentation()) return true;
  IntMatrix image = matrix_ * src_.relations();
  for (std::size_t j = 0; j < image.cols(); ++j)
    if (!tgt_.is_zero_element(image.col(j))) return false;
  return true;
}

Element FpAbHom::apply(const Element& x) const {
  if (!x.group().same_presentation(src_)) throw DimensionMismatch("element is not in the source group");
  return {tgt_, matrix_ * x.coords()};
}

bool FpAbHom::equals(const FpAbHom& other) const {
  if (!src_.same_presentation(other.src_) || !tgt_.same_presentation(other.tgt_)) return false;
  IntMatrix d = matrix_ - other.matrix_;
  for (std::size_t j = 0; j < d.cols(); ++j)
    if (!tgt_.is_zero_element(d.col(j))) return false;
  return true;
}

bool FpAbHom::is_zero() const {
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    if (!tgt_.is_zero_element(matrix_.col(j))) return false;
  return true;
}

namespace {

void require_parallel(const FpAbHom& a, const FpAbHom& b) {
  if (!a.src().same_presentation(b.src()) || !a.tgt().same_presentation(b.tgt())) {
    throw DimensionMismatch("homomorphisms have different endpoints");
  }
}

}  // namespace

FpAbHom operator+(const FpAbHom& a, const FpAbHom& b) {
  require_parallel(a, b);
  return FpAbHom(a.src_, a.tgt_, a.matrix_ + b.matrix_);
}

FpAbHom operator-(const FpAbHom& a, const FpAbHom& b) {
  require_parallel(a, b);
  return FpAbHom(a.src_, a.tgt_, a.matrix_ - b.matrix_);
}

FpAbHom operator-(const FpAbHom& a) { return FpAbHom(a.src_, a.tgt_, -a.matrix_); }

FpAbHom operator*(const Integer& k, const FpAbHom& a) { return FpAbHom(a.src_, a.tgt_, a.matrix_ * k); }

FpAbHom compose(const FpAbHom& g, const FpAbHom& f) {
  if (!f.tgt().same_presentation(g.src())) throw DimensionMismatch("compose: target of f is not the source of g");
  return FpAbHom::trusted(f.src(), g.tgt(), g.matrix() * f.matrix());
}

FpAbHom make_hom(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix) {
  return FpAbHom::make(std::move(src), std::move(tgt), std::move(matrix));
}

}  // namespace yoneda
