#pragma once

// Named test groups and the group-spec text format:
//
//   a5 | s5 | sl2(5) | subdirect-sl25 | gn(p,q,n)
//   perm{<cycles>;<cycles>;..}        e.g. perm{(1 2 3);(1 2)(3 4)}
//   mat(q){<entries>;<entries>;..}    square matrices, row-major, e.g. mat(5){1,1,0,1;0,-1,1,0}

#include <string>
#include <string_view>

#include "finperf/group.hpp"

namespace finperf {

struct CatalogGroup {
  std::string name;
  ConcreteGroup group;
};

// Builders throw ResourceError when the group exceeds opts.cap.
CatalogGroup catalog_a5(GroupOptions const& opts = {});
CatalogGroup catalog_s5(GroupOptions const& opts = {});
CatalogGroup catalog_sl25(GroupOptions const& opts = {});
CatalogGroup catalog_a5xa5(GroupOptions const& opts = {});
// Preimage in SL2(5) x SL2(5) of the diagonal A5: generated by (s, s), (t, t), (I, -I).
CatalogGroup catalog_subdirect_sl25(GroupOptions const& opts = {});

// Throws ParameterError on malformed text and ResourceError above opts.cap.
CatalogGroup parse_group_spec(std::string_view spec, GroupOptions const& opts = {});

}  // namespace finperf
