/// One row of the wave-paddle configuration table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogueEntry {
    /// Target wave height H [m].
    pub height: f64,
    /// Wavelength [m].
    pub wavelength: f64,
    /// Celerity [m/s].
    pub celerity: f64,
}

const ROWS: [(f64, f64, f64); 6] = [
    (0.4, 9.22634, 3.35879),
    (0.5, 8.60361, 3.50179),
    (0.6, 8.16210, 3.63916),
    (0.7, 7.83151, 3.77154),
    (0.8, 7.57411, 3.89942),
    (0.9, 7.36769, 4.02324),
];

/// The six solitary waves studied, H = 0.4…0.9 m on 0.75 m of water.
pub fn scenario_catalogue() -> Vec<CatalogueEntry> {
    ROWS.iter()
        .map(|&(height, wavelength, celerity)| CatalogueEntry {
            height,
            wavelength,
            celerity,
        })
        .collect()
}
