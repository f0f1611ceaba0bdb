#pragma once

#include <memory>
#include <vector>

namespace viscobeam {

/// One-dimensional partition of [0, L] into intervals. Immutable after
/// construction, so a single mesh can back any number of concurrent solves.
class Mesh1D {
public:
    /// n equal elements of length L/n on [0, L].
    static Mesh1D uniform(double length, int elements);

    /// Arbitrary partition. Nodes must be strictly increasing and start at 0.
    explicit Mesh1D(std::vector<double> nodes);

    int element_count() const { return static_cast<int>(nodes_.size()) - 1; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double length() const { return nodes_.back(); }
    double element_left(int e) const { return nodes_[static_cast<std::size_t>(e)]; }
    double element_length(int e) const;
    double h_max() const { return h_max_; }
    const std::vector<double>& nodes() const { return nodes_; }

    /// Index of the element whose interval contains x, left-closed; the
    /// last element also owns the right endpoint. x outside [0, L] throws.
    int element_containing(double x) const;

    /// True when every node of this mesh appears (up to roundoff) among the
    /// nodes of `fine`.
    bool nested_in(const Mesh1D& fine) const;

    bool operator==(const Mesh1D& other) const { return nodes_ == other.nodes_; }

private:
    std::vector<double> nodes_;
    double h_max_ = 0.0;
};

using MeshPtr = std::shared_ptr<const Mesh1D>;

} // namespace viscobeam
