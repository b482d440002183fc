"""Suffix-array LCP representations: plain, 2n-bit unary encoding, and sampled select."""
from .bitvec import BitVector, RankSelectSupport, build_support
from .bundle import IndexBundle, build_bundle
from .lcp_sadakane import SadakaneLcp, build_sadakane
from .lcp_wee import ApproxSelect, WeeLcp, WeeParams, build_wee
from .space import SpaceReport
from .st_nav import IntervalNode, LcpNavigator
from .text_index import (LcpArray, SuffixArray, Text, build_lcp_kasai, build_suffix_array,
                         load_text)

__version__ = "0.1.0"
