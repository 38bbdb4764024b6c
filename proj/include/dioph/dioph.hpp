#ifndef DIOPH_DIOPH_HPP
#define DIOPH_DIOPH_HPP

#include <dioph/catalog.hpp>
#include <dioph/classify.hpp>
#include <dioph/enumerate.hpp>
#include <dioph/equivalence.hpp>
#include <dioph/errors.hpp>
#include <dioph/families.hpp>
#include <dioph/integer.hpp>
#include <dioph/measures.hpp>
#include <dioph/parse.hpp>
#include <dioph/polynomial.hpp>
#include <dioph/search.hpp>

#endif
