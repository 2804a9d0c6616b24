#ifndef AMLAB_AMLAB_HPP
#define AMLAB_AMLAB_HPP

#include "amlab/amalgam.hpp"
#include "amlab/bitset.hpp"
#include "amlab/concrete_group.hpp"
#include "amlab/coset_enum.hpp"
#include "amlab/double_cover.hpp"
#include "amlab/errors.hpp"
#include "amlab/field.hpp"
#include "amlab/fp_group.hpp"
#include "amlab/geometry.hpp"
#include "amlab/homotopy.hpp"
#include "amlab/perm_group.hpp"
#include "amlab/quasi_phan.hpp"
#include "amlab/smith.hpp"
#include "amlab/sp_action.hpp"
#include "amlab/structure.hpp"
#include "amlab/subspace.hpp"
#include "amlab/symplectic.hpp"

#endif  // AMLAB_AMLAB_HPP
