#pragma once

#include <cstdint>
#include <string>

namespace flatchain {

enum class GroupKind { Integers, Reals, CyclicMod };

class GroupElement;

/// A normed abelian coefficient group: Z, R or Z/pZ.
///
/// Norms are |k| for Z and R, and the geodesic norm min(k, p - k) on Z/pZ.
/// Groups are small value types; two groups compare equal when they have the
/// same kind and modulus.
class Group {
public:
    static Group integers();
    static Group reals();
    static Group cyclic(std::int64_t p);

    GroupKind kind() const { return kind_; }
    std::int64_t modulus() const { return modulus_; }
    bool is_discrete() const { return kind_ != GroupKind::Reals; }

    GroupElement zero() const;
    GroupElement element(std::int64_t k) const;
    GroupElement element(double v) const;

    /// "Z", "R" or "Z_p".
    std::string name() const;

    friend bool operator==(const Group&, const Group&) = default;

private:
    Group(GroupKind kind, std::int64_t modulus) : kind_(kind), modulus_(modulus) {}

    GroupKind kind_;
    std::int64_t modulus_;
};

class GroupElement {
public:
    const Group& group() const { return group_; }

    /// Integer representative; CyclicMod values lie in [0, p).
    std::int64_t integer() const { return ivalue_; }
    /// The value as a real number (the representative for discrete groups).
    double value() const;

    bool is_zero() const;
    double norm() const;

    GroupElement operator-() const;
    GroupElement times(std::int64_t k) const;

    friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
    friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
    friend bool operator==(const GroupElement& a, const GroupElement& b);

    GroupElement& operator+=(const GroupElement& other) { return *this = *this + other; }

private:
    friend class Group;
    GroupElement(Group g, std::int64_t i, double r) : group_(g), ivalue_(i), rvalue_(r) {}

    Group group_;
    std::int64_t ivalue_ = 0;
    double rvalue_ = 0.0;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
double norm(const GroupElement& g);

}  // namespace flatchain
