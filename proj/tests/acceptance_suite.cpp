#include "acceptance_suite.hpp"
