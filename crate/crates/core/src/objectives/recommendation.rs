use crate::oracle::{MarginalState, SetFunction};
use crate::set::ElementId;

/// Genre tags of the MovieLens catalogue, in mask-bit order.
pub const GENRES: [&str; 18] = [
    "Action",
    "Adventure",
    "Animation",
    "Children's",
    "Comedy",
    "Crime",
    "Documentary",
    "Drama",
    "Fantasy",
    "Film-Noir",
    "Horror",
    "Musical",
    "Mystery",
    "Romance",
    "Sci-Fi",
    "Thriller",
    "War",
    "Western",
];

/// Bit index of a genre name. `Children` and `Children's` are the same tag.
pub fn genre_index(name: &str) -> Option<usize> {
    let name = name.trim();
    if name == "Children" {
        return Some(3);
    }
    GENRES.iter().position(|g| *g == name)
}

/// One user's genre-weighted best-rating objective:
/// `f(S) = Σ_t w_t · max_{v ∈ R ∩ G_t ∩ S} r(v)`, empty max = 0.
#[derive(Debug, Clone)]
pub struct RecommendationObjective {
    weights: [f64; GENRES.len()],
    /// per element: the user's rating (0 when unrated) and its genre mask
    items: Vec<(f64, u32)>,
}

impl RecommendationObjective {
    /// `rated` lists `(element, rating, genre mask)` for the movies the user rated.
    pub fn new(n: usize, weights: [f64; GENRES.len()], rated: &[(ElementId, f64, u32)]) -> Self {
        assert!(weights.iter().all(|w| *w >= 0.0));
        let mut items = vec![(0.0, 0); n];
        for &(e, r, mask) in rated {
            assert!((1.0..=5.0).contains(&r), "rating {r} outside [1, 5]");
            items[e.index()] = (r, mask);
        }
        RecommendationObjective { weights, items }
    }

    pub fn weights(&self) -> &[f64; GENRES.len()] {
        &self.weights
    }
}

fn genres(mask: u32) -> impl Iterator<Item = usize> {
    (0..GENRES.len()).filter(move |t| mask & (1 << t) != 0)
}

impl SetFunction for RecommendationObjective {
    fn ground_size(&self) -> usize {
        self.items.len()
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        let mut best = [0.0f64; GENRES.len()];
        for e in set {
            let (r, mask) = self.items[e.index()];
            for t in genres(mask) {
                best[t] = best[t].max(r);
            }
        }
        best.iter().zip(&self.weights).map(|(b, w)| b * w).sum()
    }

    fn state(&self, set: &[ElementId]) -> Option<Box<dyn MarginalState + '_>> {
        let mut st = RecommendationState {
            f: self,
            best: [0.0; GENRES.len()],
        };
        for &e in set {
            st.insert(e);
        }
        Some(Box::new(st))
    }
}

struct RecommendationState<'a> {
    f: &'a RecommendationObjective,
    best: [f64; GENRES.len()],
}

impl MarginalState for RecommendationState<'_> {
    fn value(&self) -> f64 {
        self.best.iter().zip(&self.f.weights).map(|(b, w)| b * w).sum()
    }

    fn gain(&self, e: ElementId) -> f64 {
        let (r, mask) = self.f.items[e.index()];
        genres(mask)
            .map(|t| self.f.weights[t] * (r - self.best[t]).max(0.0))
            .sum()
    }

    fn insert(&mut self, e: ElementId) {
        let (r, mask) = self.f.items[e.index()];
        for t in genres(mask) {
            self.best[t] = self.best[t].max(r);
        }
    }
}
