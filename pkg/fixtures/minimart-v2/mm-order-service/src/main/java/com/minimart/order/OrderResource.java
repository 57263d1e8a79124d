package com.minimart.order;

import javax.ws.rs.*;
import javax.ws.rs.core.MediaType;

@Path("/api/v1/orders")
@Produces(MediaType.APPLICATION_JSON)
public class OrderResource {

    private final OrderService orders;

    public OrderResource(OrderService orders) {
        this.orders = orders;
    }

    @GET
    @Path("/{orderId}")
    public String get(@PathParam("orderId") String orderId) {
        return orders.describe(orderId);
    }

    @POST
    @Consumes(MediaType.APPLICATION_JSON)
    public String create(String body) {
        return orders.place(body);
    }
}
