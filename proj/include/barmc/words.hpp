#pragma once

#include <map>
#include <string>
#include <vector>

#include "barmc/graded.hpp"
#include "barmc/perm.hpp"

namespace barmc {

/* A tensor word: letter indices into some alphabet (usually the basis of a
 * suspended algebra). Letter degrees are supplied by context. */
using Word = std::vector<int>;

struct WordSpace {
    std::vector<Word> words;
    std::map<Word, int> index;
    std::vector<int> degree;  // per word

    int dim() const { return static_cast<int>(words.size()); }
    int add(const Word& w, int deg);
};

/* All length-w words in an alphabet of given size, lexicographic. */
WordSpace tensor_words(const std::vector<int>& letter_deg, int w);

int word_degree(const std::vector<int>& letter_deg, const Word& w);

/* Koszul sign of placing letter i at slot sigma(i): product of
 * (-1)^{deg_i deg_j} over inversions. */
int koszul_sign(const std::vector<int>& letter_deg, const Word& w, const Perm& sigma);

/* sigma . w: the word with w's letter from slot i at slot sigma(i). */
Word apply_perm(const Word& w, const Perm& sigma);

/* Sparse vector in a WordSpace's coordinates. */
using WVec = std::map<int, Rat>;

void wvec_add(WVec& a, int idx, const Rat& c);

/* The action of a group algebra element on a word, with Koszul signs. */
WVec act(const GroupAlgElt& z, const std::vector<int>& letter_deg, const WordSpace& ws,
         int word_idx);

/* Matrix of the action of z on a whole word space (square). */
SparseMat action_matrix(const GroupAlgElt& z, const std::vector<int>& letter_deg,
                        const WordSpace& ws);

/* Signed shuffle product x sh y of two basis words, in T_{u+v} coordinates. */
WVec shuffle_product(const std::vector<int>& letter_deg, const WordSpace& tu,
                     const WordSpace& tv, const WordSpace& tuv, int wi_u, int wi_v);

/* Graded-symmetric words: weakly increasing letter sequences where letters of
 * odd degree never repeat. Normalization returns (index, sign) or sign 0. */
struct SymWordSpace {
    std::vector<Word> words;  // sorted words
    std::map<Word, int> index;
    std::vector<int> degree;

    int dim() const { return static_cast<int>(words.size()); }
};

SymWordSpace sym_words(const std::vector<int>& letter_deg, int w);

/* Sort a word into its canonical symmetric representative; sign = Koszul sign
 * of the sorting permutation, 0 if an odd letter repeats. */
std::pair<int, int> sym_normalize(const std::vector<int>& letter_deg, const SymWordSpace& ss,
                                  const Word& w);

std::string word_name(const GradedVectorSpace& alphabet, const Word& w, char open, char close);

}  // namespace barmc
