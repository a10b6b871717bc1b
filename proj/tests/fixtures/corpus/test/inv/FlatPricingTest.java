package inv;

import static org.junit.Assert.*;

import org.junit.Test;

public class FlatPricingTest {
    @Test
    public void addsFee() {
        FlatPricing p = new FlatPricing(5);
        assertEquals(7.0, p.price(new Item("a", 1, 2)), 1e-9);
    }

    @Test
    public void taxAboveLimit() {
        FlatPricing p = new FlatPricing(0);
        assertEquals(40.0, p.tax(null, 200), 1e-9);
        assertEquals(0.0, p.tax(null, 50), 1e-9);
    }

    public void testNoFee() {
        assertTrue(new FlatPricing(0).tax(null, 1) == 0);
    }
}
