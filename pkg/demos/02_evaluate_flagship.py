"""Evaluate the flagship diesel-free design and inspect where the energy
and the money go.

Run:  python demos/02_evaluate_flagship.py
"""

from pathlib import Path

from mgdesign import Design, bundled_scenario, evaluate, npc, simulate_year, write_trace_csv

scenario = bundled_scenario()
flagship = Design(pv_kw=418.0, wt_kw=123.0, dg_kw=0.0, bess_kwh=704.0, converter_kw=255.0)

trace = simulate_year(scenario, flagship)
metrics = evaluate(flagship, scenario, trace=trace)
total, costs = npc(trace, flagship, scenario)

print("flagship design: 418 kW PV / 123 kW wind / no diesel / 704 kWh battery / 255 kW converter")
print("\nannual energy flows:")
print(f"  load served      {trace.served_kwh:>12,.0f} kWh   (unmet {trace.unmet_kwh:,.0f})")
print(f"  pv production    {trace.pv_kwh:>12,.0f} kWh")
print(f"  wind production  {trace.wt_kwh:>12,.0f} kWh")
print(f"  grid import      {trace.import_kwh:>12,.0f} kWh")
print(f"  grid export      {trace.export_kwh:>12,.0f} kWh")
print(f"  conversion loss  {trace.conversion_loss_kwh:>12,.0f} kWh")
print(f"  battery loss     {trace.battery_loss_kwh:>12,.0f} kWh")
print(f"  curtailed        {trace.curtailed_kwh:>12,.0f} kWh")

print("\nlifetime economics (constant dollars, real discounting):")
print(f"  capital          ${costs.capital_usd:>12,.0f}")
print(f"  O&M              ${costs.om_usd_per_yr:>12,.0f} /yr")
print(f"  grid purchases   ${costs.grid_energy_usd_per_yr:>12,.0f} /yr")
print(f"  sellback revenue ${costs.sellback_usd_per_yr:>12,.0f} /yr")
print(f"  replacements     ${costs.replacement_usd_pw:>12,.0f} (present value)")
print(f"  salvage credit   ${costs.salvage_usd_pw:>12,.0f} (present value)")
print(f"  net present cost ${total:>12,.0f}")

print("\nobjectives:")
print(f"  reliability  {metrics.reliability:.4f}   efficiency {metrics.efficiency_pct:.2f}%")
print(f"  net CO2      {metrics.co2_kg_per_yr:,.0f} kg/yr   LCOE ${metrics.lcoe_usd_per_kwh:.3f}/kWh")

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)
write_trace_csv(trace, out / "flagship_trace.csv")
print(f"\nhourly trace written to {out / 'flagship_trace.csv'}")
