use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use log::warn;

use crate::error::{domain, Error, Result};
use crate::objectives::{genre_index, RecommendationObjective, TaskAverageObjective, GENRES};
use crate::oracle::{Oracle, SetFunction};
use crate::set::ElementId;

use super::TaskSampler;

/// User ratings plus movie titles and genre masks (bit `t` = `GENRES[t]`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RatingsTable {
    ratings: BTreeMap<u32, BTreeMap<u32, f64>>,
    genres: BTreeMap<u32, u32>,
    titles: BTreeMap<u32, String>,
}

/// Rows dropped while loading.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TableStats {
    pub malformed: usize,
    pub untagged_movies: usize,
    pub unknown_movie: usize,
    pub out_of_range: usize,
}

impl RatingsTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Movies without any genre are rejected.
    pub fn add_movie(&mut self, id: u32, title: &str, genres: u32) -> Result<()> {
        if genres == 0 {
            return domain(format!("movie {id} has no genre"));
        }
        self.genres.insert(id, genres);
        self.titles.insert(id, title.to_string());
        Ok(())
    }

    pub fn add_rating(&mut self, user: u32, movie: u32, rating: f64) -> Result<()> {
        if !(1.0..=5.0).contains(&rating) {
            return domain(format!("rating {rating} outside [1, 5]"));
        }
        if !self.genres.contains_key(&movie) {
            return domain(format!("movie {movie} is not in the catalogue"));
        }
        self.ratings.entry(user).or_default().insert(movie, rating);
        Ok(())
    }

    pub fn users(&self) -> impl Iterator<Item = u32> + '_ {
        self.ratings.keys().copied()
    }

    pub fn movies(&self) -> impl Iterator<Item = u32> + '_ {
        self.genres.keys().copied()
    }

    pub fn num_ratings(&self) -> usize {
        self.ratings.values().map(BTreeMap::len).sum()
    }

    pub fn rating(&self, user: u32, movie: u32) -> Option<f64> {
        self.ratings.get(&user)?.get(&movie).copied()
    }

    pub fn genre_mask(&self, movie: u32) -> Option<u32> {
        self.genres.get(&movie).copied()
    }

    pub fn title(&self, movie: u32) -> Option<&str> {
        self.titles.get(&movie).map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.ratings.is_empty()
    }
}

/// Rows of a delimited file. Single-byte delimiters go through a CSV reader
/// (quoted fields allowed); longer ones such as `::` are split literally.
/// A first row whose leading field is not an integer is a header and dropped.
fn rows(path: &Path, delimiter: &str) -> Result<Vec<Vec<String>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let mut out: Vec<Vec<String>> = if delimiter.len() == 1 {
        csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .delimiter(delimiter.as_bytes()[0])
            .from_reader(text.as_bytes())
            .records()
            .filter_map(|r| r.ok())
            .map(|r| r.iter().map(str::to_string).collect())
            .collect()
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(delimiter).map(str::to_string).collect())
            .collect()
    };
    if out.first().is_some_and(|r| r[0].trim().parse::<u32>().is_err()) {
        out.remove(0);
    }
    Ok(out)
}

/// Movie catalogue: `id, title, genres` with genres separated by `|`. Titles
/// may themselves contain the delimiter.
pub fn load_movies(path: impl AsRef<Path>, delimiter: &str) -> Result<(RatingsTable, TableStats)> {
    let mut table = RatingsTable::new();
    let mut stats = TableStats::default();
    for r in rows(path.as_ref(), delimiter)? {
        let Some(id) = r.first().and_then(|f| f.trim().parse::<u32>().ok()).filter(|_| r.len() >= 3) else {
            stats.malformed += 1;
            continue;
        };
        let mask = r[r.len() - 1]
            .split('|')
            .filter_map(genre_index)
            .fold(0u32, |m, t| m | (1 << t));
        let title = r[1..r.len() - 1].join(delimiter);
        if table.add_movie(id, &title, mask).is_err() {
            stats.untagged_movies += 1;
        }
    }
    if stats.untagged_movies > 0 {
        warn!("dropped {} movies without a genre", stats.untagged_movies);
    }
    Ok((table, stats))
}

/// Ratings `user, movie, rating[, timestamp]` joined with the movie catalogue.
pub fn load_ratings(
    ratings: impl AsRef<Path>,
    movies: impl AsRef<Path>,
    delimiter: &str,
) -> Result<(RatingsTable, TableStats)> {
    let (mut table, mut stats) = load_movies(movies, delimiter)?;
    for r in rows(ratings.as_ref(), delimiter)? {
        let parsed = (|| {
            let user = r.first()?.trim().parse::<u32>().ok()?;
            let movie = r.get(1)?.trim().parse::<u32>().ok()?;
            let rating = r.get(2)?.trim().parse::<f64>().ok()?;
            Some((user, movie, rating))
        })();
        let Some((user, movie, rating)) = parsed else {
            stats.malformed += 1;
            continue;
        };
        if !(1.0..=5.0).contains(&rating) {
            stats.out_of_range += 1;
        } else if table.add_rating(user, movie, rating).is_err() {
            stats.unknown_movie += 1;
        }
    }
    let dropped = stats.malformed + stats.out_of_range + stats.unknown_movie;
    if dropped > 0 {
        warn!("dropped {dropped} rating rows");
    }
    if table.is_empty() {
        return Err(Error::Input("no usable ratings".into()));
    }
    Ok((table, stats))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MovieLensParams {
    pub top_movies: usize,
    pub top_users: usize,
    pub train_users: usize,
    pub test_users: usize,
    pub users_per_task: usize,
    pub train_tasks: usize,
    pub test_tasks: usize,
}

impl Default for MovieLensParams {
    fn default() -> Self {
        MovieLensParams {
            top_movies: 2000,
            top_users: 200,
            train_users: 100,
            test_users: 100,
            users_per_task: 5,
            train_tasks: 20,
            test_tasks: 20,
        }
    }
}

pub struct MovieLensSuite {
    /// Movie id of each ground element.
    pub movies: Vec<u32>,
    pub train_users: Vec<u32>,
    pub test_users: Vec<u32>,
    pub train: Vec<Oracle>,
    pub test: Vec<Oracle>,
}

/// The `count` keys with the most entries, ties to the smaller key.
fn top_by_count(counts: &BTreeMap<u32, usize>, count: usize) -> Vec<u32> {
    let mut ranked: Vec<(u32, usize)> = counts.iter().map(|(&k, &c)| (k, c)).filter(|p| p.1 > 0).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.into_iter().take(count).map(|p| p.0).collect()
}

/// One user's objective on the retained movies. Genre weights are the user's
/// (movie, genre) rating pairs per genre over all such pairs.
fn user_objective(table: &RatingsTable, user: u32, index: &BTreeMap<u32, usize>) -> RecommendationObjective {
    let mut rated = Vec::new();
    let mut counts = [0.0f64; GENRES.len()];
    for (&movie, &rating) in &table.ratings[&user] {
        let Some(&e) = index.get(&movie) else { continue };
        let mask = table.genres[&movie];
        for (t, c) in counts.iter_mut().enumerate() {
            if mask & (1 << t) != 0 {
                *c += 1.0;
            }
        }
        rated.push((ElementId::from(e), rating, mask));
    }
    let total: f64 = counts.iter().sum();
    let weights = counts.map(|c| if total > 0.0 { c / total } else { 0.0 });
    RecommendationObjective::new(index.len(), weights, &rated)
}

/// Keeps the most-rated movies and the users with the most ratings among
/// them, splits those users into disjoint train and test pools, and builds
/// each task as the average of `users_per_task` users drawn from one pool.
pub fn make_movielens_tasks(
    table: &RatingsTable,
    params: &MovieLensParams,
    sampler: &mut TaskSampler,
) -> Result<MovieLensSuite> {
    if table.is_empty() {
        return domain("empty ratings table");
    }
    let mut movie_counts = BTreeMap::new();
    for r in table.ratings.values() {
        for &m in r.keys() {
            *movie_counts.entry(m).or_insert(0) += 1;
        }
    }
    let mut movies = top_by_count(&movie_counts, params.top_movies);
    movies.sort_unstable();
    let index: BTreeMap<u32, usize> = movies.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let user_counts: BTreeMap<u32, usize> = table
        .ratings
        .iter()
        .map(|(&u, r)| (u, r.keys().filter(|m| index.contains_key(m)).count()))
        .collect();
    let mut users = top_by_count(&user_counts, params.top_users);
    let wanted = params.train_users + params.test_users;
    if users.len() < wanted {
        return domain(format!("{} users available, {wanted} requested", users.len()));
    }
    if params.users_per_task == 0 || params.users_per_task > params.train_users.min(params.test_users) {
        return domain("users_per_task must be between 1 and the smaller user pool");
    }
    users.truncate(wanted);
    sampler.shuffle(&mut users);
    let test_users = users.split_off(params.train_users);
    let train_users = users;

    let objectives: BTreeMap<u32, Arc<dyn SetFunction>> = train_users
        .iter()
        .chain(&test_users)
        .map(|&u| (u, Arc::new(user_objective(table, u, &index)) as Arc<dyn SetFunction>))
        .collect();
    let mut tasks = |pool: &[u32], m: usize| -> Vec<Oracle> {
        (0..m)
            .map(|_| {
                let parts = sampler
                    .distinct(pool.len(), params.users_per_task)
                    .into_iter()
                    .map(|i| Arc::clone(&objectives[&pool[i]]))
                    .collect();
                Oracle::new(TaskAverageObjective::new(parts))
            })
            .collect()
    };
    let train = tasks(&train_users, params.train_tasks);
    let test = tasks(&test_users, params.test_tasks);
    Ok(MovieLensSuite {
        movies,
        train_users,
        test_users,
        train,
        test,
    })
}
