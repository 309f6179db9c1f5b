#pragma once

#include "linrel/core.hpp"
#include "linrel/subspace.hpp"
#include "linrel/forms.hpp"
#include "linrel/relations.hpp"
#include "linrel/symplectic.hpp"
#include "linrel/morse.hpp"
#include "linrel/cayley.hpp"
#include "linrel/stability.hpp"
#include "linrel/io.hpp"
